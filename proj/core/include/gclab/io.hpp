#ifndef GCLAB_IO_HPP
#define GCLAB_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "gclab/chain.hpp"
#include "gclab/rate.hpp"
#include "gclab/spectral.hpp"

namespace gclab {

/// CSV with a header row, ',' separator, '.' decimal, shortest round-trip
/// doubles; identical inputs produce byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);

private:
    struct Impl;
    Impl* impl_;
};

std::string format_double(double v);

void write_json_file(const std::string& path, const nlohmann::json& j);

/// Field rows `mode_index,cos_coeff,sin_coeff`.
void write_field_csv(const std::string& path, const SpectralField& u);
nlohmann::json field_to_json(const SpectralField& u);
SpectralField field_from_json(const nlohmann::json& j);

/// Trajectory dump `step,norm_L2,norm_H1,sigma,xi_running` (rows 1..k).
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

void write_scgf_csv(const std::string& path, const ScgfCurve& curve);
void write_rate_csv(const std::string& path, const RateFunction& rate);

/// Minimal SVG line chart; one polyline per series over a shared x grid.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<double>& x,
                     const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace gclab

#endif
