#include "gclab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace gclab {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    // %.17g round-trips doubles; trim to the shortest form that still does.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out) throw std::runtime_error("CsvWriter: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        impl_->out << (i ? "," : "") << header[i];
    impl_->out << '\n';
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        impl_->out << (i ? "," : "") << format_double(values[i]);
    impl_->out << '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) impl_->out << (i ? "," : "") << values[i];
    impl_->out << '\n';
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_json_file: cannot open " + path);
    out << j.dump(2) << '\n';
}

void write_field_csv(const std::string& path, const SpectralField& u) {
    CsvWriter csv(path, {"mode_index", "cos_coeff", "sin_coeff"});
    for (int j = 1; j <= u.modes(); ++j)
        csv.row({static_cast<double>(j), u.cos_coeff(j), u.sin_coeff(j)});
}

nlohmann::json field_to_json(const SpectralField& u) {
    nlohmann::json j;
    j["modes"] = u.modes();
    j["coeffs"] = u.coeffs();
    return j;
}

SpectralField field_from_json(const nlohmann::json& j) {
    return SpectralField(j.at("modes").get<int>(), j.at("coeffs").get<std::vector<double>>());
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    CsvWriter csv(path, {"step", "norm_L2", "norm_H1", "sigma", "xi_running"});
    double acc = 0.0;
    for (long n = 1; n <= traj.steps; ++n) {
        acc += traj.flux_increments[n - 1];
        csv.row({static_cast<double>(n), traj.norm_l2[n], traj.norm_h1[n],
                 traj.flux_increments[n - 1], acc / static_cast<double>(n)});
    }
}

void write_scgf_csv(const std::string& path, const ScgfCurve& curve) {
    CsvWriter csv(path, {"alpha", "scgf", "stderr", "provenance"});
    const std::string prov = to_string(curve.provenance);
    for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
        const double se = i < curve.stderrs.size() ? curve.stderrs[i] : 0.0;
        csv.row_mixed({format_double(curve.alphas[i]), format_double(curve.values[i]),
                       format_double(se), prov});
    }
}

void write_rate_csv(const std::string& path, const RateFunction& rate) {
    CsvWriter csv(path, {"r", "I", "finite"});
    for (std::size_t i = 0; i < rate.rs.size(); ++i)
        csv.row_mixed({format_double(rate.rs[i]),
                       rate.finite_at(i) ? format_double(rate.values[i]) : "inf",
                       rate.finite_at(i) ? "1" : "0"});
}

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<double>& x,
                     const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_svg_chart: cannot open " + path);
    const int W = 720, H = 480, ml = 60, mr = 20, mt = 40, mb = 40;
    double xmin = x.empty() ? 0 : x.front(), xmax = x.empty() ? 1 : x.back();
    double ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& [name, ys] : series)
        for (double v : ys) {
            if (!std::isfinite(v)) continue;
            if (first) {
                ymin = ymax = v;
                first = false;
            }
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (ymax <= ymin) ymax = ymin + 1.0;
    if (xmax <= xmin) xmax = xmin + 1.0;
    const auto X = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr); };
    const auto Y = [&](double v) { return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb); };

    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n";
    out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    int ci = 0;
    for (const auto& [name, ys] : series) {
        out << "<polyline fill='none' stroke='" << colors[ci % 4] << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < x.size() && i < ys.size(); ++i) {
            if (!std::isfinite(ys[i])) continue;
            out << X(x[i]) << ',' << Y(ys[i]) << ' ';
        }
        out << "'/>\n";
        out << "<text x='" << W - mr - 120 << "' y='" << mt + 16 * (ci + 1) << "' fill='"
            << colors[ci % 4] << "' font-size='12'>" << name << "</text>\n";
        ++ci;
    }
    // Axis extremes.
    out << "<text x='" << ml << "' y='" << H - mb + 16 << "' font-size='11'>"
        << format_double(xmin) << "</text>\n";
    out << "<text x='" << W - mr << "' y='" << H - mb + 16
        << "' text-anchor='end' font-size='11'>" << format_double(xmax) << "</text>\n";
    out << "<text x='" << ml - 4 << "' y='" << H - mb << "' text-anchor='end' font-size='11'>"
        << format_double(ymin) << "</text>\n";
    out << "<text x='" << ml - 4 << "' y='" << mt + 4 << "' text-anchor='end' font-size='11'>"
        << format_double(ymax) << "</text>\n";
    out << "</svg>\n";
}

}  // namespace gclab
