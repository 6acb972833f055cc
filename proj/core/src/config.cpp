#include "gclab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "gclab/errors.hpp"

namespace gclab {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
    if (!j.is_object()) throw ConfigError("expected an object", path);
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "'", path);
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("wrong type for '" + key + "'", path);
    }
}

std::vector<double> get_vec(const json& j, const std::string& key, const std::string& path) {
    std::vector<double> out;
    if (!j.contains(key)) return out;
    if (!j.at(key).is_array()) throw ConfigError("'" + key + "' must be an array", path);
    for (const auto& v : j.at(key)) out.push_back(v.get<double>());
    return out;
}

}  // namespace

std::vector<double> ScgfSection::grid() const {
    if (!alphas.empty()) return alphas;
    std::vector<double> g;
    const long steps = std::lround((alpha_max - alpha_min) / alpha_step);
    for (long i = 0; i <= steps; ++i) g.push_back(alpha_min + i * alpha_step);
    return g;
}

std::vector<double> RateSection::grid() const {
    std::vector<double> g;
    const long steps = std::lround((r_max - r_min) / r_step);
    for (long i = 0; i <= steps; ++i) g.push_back(r_min + i * r_step);
    return g;
}

RunConfig parse_config(const nlohmann::json& j) {
    RunConfig cfg;
    reject_unknown(j, {"model", "noise", "run", "scgf", "rate", "output", "threads"}, "/");

    if (!j.contains("model")) throw ConfigError("missing section", "model");
    const json& jm = j.at("model");
    cfg.model_type = get_or<std::string>(jm, "type", "", "model");
    if (cfg.model_type == "burgers") {
        reject_unknown(jm, {"type", "nu", "N", "substeps", "dealias", "grid_size", "h"}, "model");
        BurgersModelConfig m;
        m.nu = get_or(jm, "nu", m.nu, "model");
        m.modes = get_or(jm, "N", m.modes, "model");
        m.substeps = get_or(jm, "substeps", m.substeps, "model");
        m.dealias = get_or(jm, "dealias", m.dealias, "model");
        m.grid_size = get_or(jm, "grid_size", m.grid_size, "model");
        if (jm.contains("h")) {
            const json& jh = jm.at("h");
            reject_unknown(jh, {"modes"}, "model.h");
            if (jh.contains("modes"))
                for (const auto& e : jh.at("modes")) {
                    reject_unknown(e, {"j", "cos", "sin"}, "model.h.modes[]");
                    ForceMode fm;
                    fm.j = get_or(e, "j", 1, "model.h.modes[]");
                    fm.cos = get_or(e, "cos", 0.0, "model.h.modes[]");
                    fm.sin = get_or(e, "sin", 0.0, "model.h.modes[]");
                    if (fm.j < 1 || fm.j > m.modes)
                        throw ConfigError("force mode index out of range", "model.h.modes[].j");
                    m.h_modes.push_back(fm);
                }
        }
        cfg.burgers = std::move(m);
    } else if (cfg.model_type == "scalar") {
        reject_unknown(jm, {"type", "map", "grid"}, "model");
        ScalarModelConfig m;
        if (jm.contains("map")) {
            const json& jmap = jm.at("map");
            reject_unknown(jmap, {"kind", "kappa", "q", "c", "u", "s"}, "model.map");
            m.map_kind = get_or<std::string>(jmap, "kind", m.map_kind, "model.map");
            m.kappa = get_or(jmap, "kappa", m.kappa, "model.map");
            m.slope = get_or(jmap, "q", m.slope, "model.map");
            m.c = get_or(jmap, "c", m.c, "model.map");
            m.table_u = get_vec(jmap, "u", "model.map");
            m.table_s = get_vec(jmap, "s", "model.map");
            if (m.map_kind != "tanh" && m.map_kind != "linear" && m.map_kind != "constant" &&
                m.map_kind != "table")
                throw ConfigError("unknown map kind '" + m.map_kind + "'", "model.map.kind");
        }
        if (jm.contains("grid")) {
            const json& jg = jm.at("grid");
            reject_unknown(jg, {"L", "n", "rule"}, "model.grid");
            m.grid.L = get_or(jg, "L", m.grid.L, "model.grid");
            m.grid.n = get_or(jg, "n", m.grid.n, "model.grid");
            const std::string rule = get_or<std::string>(jg, "rule", "gauss", "model.grid");
            if (rule == "gauss")
                m.grid.rule = QuadRule::GaussLegendre;
            else if (rule == "trapezoid")
                m.grid.rule = QuadRule::Trapezoid;
            else
                throw ConfigError("rule must be 'gauss' or 'trapezoid'", "model.grid.rule");
        }
        cfg.scalar = std::move(m);
    } else {
        throw ConfigError("model.type must be 'burgers' or 'scalar'", "model.type");
    }

    if (j.contains("noise")) {
        const json& jn = j.at("noise");
        reject_unknown(jn, {"family", "b0", "r", "a", "beta", "q_coeffs"}, "noise");
        cfg.noise.family = get_or<std::string>(jn, "family", cfg.noise.family, "noise");
        cfg.noise.b0 = get_or(jn, "b0", cfg.noise.b0, "noise");
        cfg.noise.r = get_or(jn, "r", cfg.noise.r, "noise");
        cfg.noise.a = get_or(jn, "a", cfg.noise.a, "noise");
        cfg.noise.beta = get_or(jn, "beta", cfg.noise.beta, "noise");
        cfg.noise.q_coeffs = get_vec(jn, "q_coeffs", "noise");
        if (cfg.noise.family != "gaussian" && cfg.noise.family != "genexp")
            throw ConfigError("family must be 'gaussian' or 'genexp'", "noise.family");
        if (!(cfg.noise.b0 > 0.0)) throw ConfigError("b0 must be positive", "noise.b0");
    }

    if (j.contains("run")) {
        const json& jr = j.at("run");
        reject_unknown(jr, {"k", "ensemble", "burn_in", "block", "seed", "thin"}, "run");
        cfg.run.k = get_or<long>(jr, "k", cfg.run.k, "run");
        cfg.run.ensemble = get_or(jr, "ensemble", cfg.run.ensemble, "run");
        cfg.run.burn_in = get_or<long>(jr, "burn_in", cfg.run.burn_in, "run");
        cfg.run.block = get_or(jr, "block", cfg.run.block, "run");
        cfg.run.seed = get_or<std::uint64_t>(jr, "seed", cfg.run.seed, "run");
        cfg.run.thin = get_or(jr, "thin", cfg.run.thin, "run");
        if (cfg.run.k < 1) throw ConfigError("k must be positive", "run.k");
    }

    if (j.contains("scgf")) {
        const json& js = j.at("scgf");
        reject_unknown(js,
                       {"alphas", "alpha_min", "alpha_max", "alpha_step", "method", "mc_k",
                        "mc_ensemble", "population", "repetitions"},
                       "scgf");
        ScgfSection s;
        s.alphas = get_vec(js, "alphas", "scgf");
        s.alpha_min = get_or(js, "alpha_min", s.alpha_min, "scgf");
        s.alpha_max = get_or(js, "alpha_max", s.alpha_max, "scgf");
        s.alpha_step = get_or(js, "alpha_step", s.alpha_step, "scgf");
        s.method = get_or<std::string>(js, "method", s.method, "scgf");
        s.mc_k = get_or<long>(js, "mc_k", s.mc_k, "scgf");
        s.mc_ensemble = get_or(js, "mc_ensemble", s.mc_ensemble, "scgf");
        s.population = get_or(js, "population", s.population, "scgf");
        s.repetitions = get_or(js, "repetitions", s.repetitions, "scgf");
        if (s.method != "oracle" && s.method != "mc_naive" && s.method != "mc_cloning")
            throw ConfigError("method must be oracle, mc_naive or mc_cloning", "scgf.method");
        if (!(s.alpha_step > 0.0)) throw ConfigError("alpha_step must be positive", "scgf.alpha_step");
        cfg.scgf = std::move(s);
    }

    if (j.contains("rate")) {
        const json& jr = j.at("rate");
        reject_unknown(jr, {"r_min", "r_max", "r_step"}, "rate");
        RateSection r;
        r.r_min = get_or(jr, "r_min", r.r_min, "rate");
        r.r_max = get_or(jr, "r_max", r.r_max, "rate");
        r.r_step = get_or(jr, "r_step", r.r_step, "rate");
        if (!(r.r_step > 0.0)) throw ConfigError("r_step must be positive", "rate.r_step");
        cfg.rate = std::move(r);
    }

    if (j.contains("output")) {
        const json& jo = j.at("output");
        reject_unknown(jo, {"dir", "tag", "formats", "plot"}, "output");
        cfg.output.dir = get_or<std::string>(jo, "dir", cfg.output.dir, "output");
        cfg.output.tag = get_or<std::string>(jo, "tag", cfg.output.tag, "output");
        cfg.output.plot = get_or(jo, "plot", cfg.output.plot, "output");
        if (jo.contains("formats")) {
            cfg.output.csv = false;
            cfg.output.json = false;
            for (const auto& f : jo.at("formats")) {
                const std::string s = f.get<std::string>();
                if (s == "csv")
                    cfg.output.csv = true;
                else if (s == "json")
                    cfg.output.json = true;
                else
                    throw ConfigError("unknown format '" + s + "'", "output.formats");
            }
        }
    }

    cfg.threads = get_or(j, "threads", 0, "/");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file", path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what(), path);
    }
    return parse_config(j);
}

nlohmann::json RunConfig::resolved() const {
    json j;
    json jm;
    jm["type"] = model_type;
    if (burgers) {
        jm["nu"] = burgers->nu;
        jm["N"] = burgers->modes;
        jm["substeps"] = burgers->substeps;
        jm["dealias"] = burgers->dealias;
        jm["grid_size"] = burgers->grid_size;
        json modes = json::array();
        for (const auto& fm : burgers->h_modes)
            modes.push_back({{"j", fm.j}, {"cos", fm.cos}, {"sin", fm.sin}});
        jm["h"] = {{"modes", modes}};
    }
    if (scalar) {
        json jmap = {{"kind", scalar->map_kind}};
        if (scalar->map_kind == "tanh") jmap["kappa"] = scalar->kappa;
        if (scalar->map_kind == "linear") jmap["q"] = scalar->slope;
        if (scalar->map_kind == "constant") jmap["c"] = scalar->c;
        if (scalar->map_kind == "table") {
            jmap["u"] = scalar->table_u;
            jmap["s"] = scalar->table_s;
        }
        jm["map"] = jmap;
        jm["grid"] = {{"L", scalar->grid.L},
                      {"n", scalar->grid.n},
                      {"rule", scalar->grid.rule == QuadRule::GaussLegendre ? "gauss" : "trapezoid"}};
    }
    j["model"] = jm;
    j["noise"] = {{"family", noise.family}, {"b0", noise.b0},          {"r", noise.r},
                  {"a", noise.a},           {"beta", noise.beta},      {"q_coeffs", noise.q_coeffs}};
    j["run"] = {{"k", run.k},       {"ensemble", run.ensemble}, {"burn_in", run.burn_in},
                {"block", run.block}, {"seed", run.seed},       {"thin", run.thin}};
    if (scgf) {
        j["scgf"] = {{"alphas", scgf->alphas},       {"alpha_min", scgf->alpha_min},
                     {"alpha_max", scgf->alpha_max}, {"alpha_step", scgf->alpha_step},
                     {"method", scgf->method},       {"mc_k", scgf->mc_k},
                     {"mc_ensemble", scgf->mc_ensemble}, {"population", scgf->population},
                     {"repetitions", scgf->repetitions}};
    }
    if (rate) {
        j["rate"] = {{"r_min", rate->r_min}, {"r_max", rate->r_max}, {"r_step", rate->r_step}};
    }
    json formats = json::array();
    if (output.csv) formats.push_back("csv");
    if (output.json) formats.push_back("json");
    j["output"] = {{"dir", output.dir}, {"tag", output.tag}, {"formats", formats},
                   {"plot", output.plot}};
    j["threads"] = threads;
    return j;
}

std::uint64_t RunConfig::hash() const {
    // FNV-1a over the canonical resolved form (nlohmann orders keys).
    const std::string s = resolved().dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string RunConfig::tag_or_hash() const {
    if (!output.tag.empty()) return output.tag;
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%012llx", static_cast<unsigned long long>(hash() & 0xFFFFFFFFFFFFull));
    return std::string(buf);
}

ComponentDensity make_component_density(const NoiseConfig& n) {
    if (n.family == "gaussian") return ComponentDensity::gaussian();
    return ComponentDensity::gen_exp(n.a, n.beta, n.q_coeffs);
}

NoiseModel make_noise_model(const NoiseConfig& n, int modes) {
    return NoiseModel(WeightSequence(modes, n.b0, n.r), make_component_density(n));
}

ScalarMap make_scalar_map(const ScalarModelConfig& m) {
    if (m.map_kind == "tanh") return ScalarMap::tanh_map(m.kappa);
    if (m.map_kind == "linear") return ScalarMap::linear(m.slope);
    if (m.map_kind == "constant") return ScalarMap::constant(m.c);
    return ScalarMap::table(m.table_u, m.table_s);
}

FlowConfig make_flow_config(const BurgersModelConfig& m) {
    FlowConfig f;
    f.nu = m.nu;
    f.substeps = m.substeps;
    f.dealias = m.dealias;
    f.grid_size = m.grid_size;
    f.h = SpectralField(m.modes);
    for (const auto& fm : m.h_modes) {
        f.h.set_cos(fm.j, fm.cos);
        f.h.set_sin(fm.j, fm.sin);
    }
    return f;
}

TransitionModel make_transition_model(const RunConfig& cfg) {
    if (cfg.model_type == "burgers") {
        const FlowConfig f = make_flow_config(*cfg.burgers);
        return TransitionModel(make_burgers_flow(f), make_noise_model(cfg.noise, cfg.burgers->modes));
    }
    // One-mode embedding of the scalar model: the first cos coordinate carries
    // the dynamics, everything else is mapped to zero.
    const ScalarMap map = make_scalar_map(*cfg.scalar);
    return TransitionModel(make_scalar_embedding_flow(map, 1), make_noise_model(cfg.noise, 1));
}

GridKernel make_grid_kernel(const RunConfig& cfg) {
    if (cfg.model_type != "scalar")
        throw ConfigError("grid kernel requires a scalar model", "model.type");
    const ScalarModelConfig& m = *cfg.scalar;
    return build_kernel(make_scalar_map(m), make_component_density(cfg.noise), m.grid.L, m.grid.n,
                        m.grid.rule, cfg.noise.b0);
}

}  // namespace gclab
