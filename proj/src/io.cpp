#include "mfs/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace mfs {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("malformed number: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("malformed number: '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("malformed integer: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("malformed integer: '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_double(tok));
    return out;
}

}  // namespace

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<double> parse_grid(const std::string& text) {
    // "a:b:step" | "v1,v2,..." | "v"
    auto parts = split(text, ':');
    if (parts.size() == 3) {
        double a = parse_double(parts[0]), b = parse_double(parts[1]), h = parse_double(parts[2]);
        if (!(h > 0.0) || !(b >= a)) throw UsageError("malformed grid '" + text + "'");
        std::vector<double> g;
        for (int i = 0;; ++i) {
            double v = a + i * h;
            if (v > b + h * 1e-9) break;
            g.push_back(std::min(v, b));
        }
        return g;
    }
    if (parts.size() == 1) return parse_list(text);
    throw UsageError("malformed grid '" + text + "'");
}

SystemSpec parse_system(const std::string& text) try {
    auto segs = split(text, ':');
    const std::string& name = segs[0];
    std::map<std::string, std::string> kv;
    for (std::size_t i = 1; i < segs.size(); ++i) {
        // a segment holds comma-separated k=v pairs; commas without '=' extend
        // the previous value (list syntax: ratios=0.3,0.5)
        std::string key;
        for (const auto& tok : split(segs[i], ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) {
                if (key.empty()) throw UsageError("malformed system descriptor '" + text + "'");
                kv[key] += "," + tok;
            } else {
                key = tok.substr(0, eq);
                kv[key] = tok.substr(eq + 1);
            }
        }
    }
    auto take = [&](const std::string& k) -> std::optional<std::string> {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    SystemSpec sys;
    if (name == "gauss") {
        sys = SystemSpec::gauss();
    } else if (name == "lueroth") {
        sys = SystemSpec::lueroth();
    } else if (name == "glueroth") {
        sys = SystemSpec::generalized_lueroth();
    } else if (name == "powerlaw") {
        auto a = take("a"), p = take("p");
        if (!a || !p) throw UsageError("powerlaw needs a=..,p=..");
        sys = SystemSpec::power_law(parse_double(*a), parse_double(*p));
    } else if (name == "logpower") {
        auto a = take("a");
        if (!a) throw UsageError("logpower needs a=..");
        sys = SystemSpec::log_power(parse_double(*a));
    } else if (name == "finite") {
        auto ratios = take("ratios");
        if (!ratios) throw UsageError("finite needs ratios=r1,r2,...");
        auto offsets = take("offsets");
        std::optional<std::vector<double>> off;
        if (offsets) off = parse_list(*offsets);
        sys = SystemSpec::finite_self_similar(parse_list(*ratios), off);
    } else {
        throw UsageError("unknown system name '" + name + "'");
    }
    if (auto tr = take("trunc")) sys = truncate(sys, parse_u64(*tr));
    if (!kv.empty()) throw UsageError("unknown system key '" + kv.begin()->first + "'");
    return sys;
} catch (const std::invalid_argument& e) {
    // constructor validation of descriptor values is a usage problem
    throw UsageError(std::string(e.what()) + " (in system descriptor '" + text + "')");
}

PotentialSpec parse_potential(const std::string& text) {
    auto segs = split(text, ':');
    const std::string& name = segs[0];
    if (name == "negid" && segs.size() == 1) return PotentialSpec::neg_identity();
    if (name == "neg2log" && segs.size() == 1) return PotentialSpec::neg_two_log();
    if (name == "geometric" && segs.size() == 1) return PotentialSpec::geometric_potential();
    if (name == "const" && segs.size() == 2) {
        auto eq = segs[1].find('=');
        if (eq != std::string::npos && segs[1].substr(0, eq) == "c")
            return PotentialSpec::constant(parse_double(segs[1].substr(eq + 1)));
    }
    throw UsageError("unknown potential '" + text + "'");
}

namespace {

const std::map<std::string, RunConfig::Command> kCommands = {
    {"pressure", RunConfig::Command::Pressure},   {"free-energy", RunConfig::Command::FreeEnergy},
    {"spectrum", RunConfig::Command::Spectrum},   {"exhaust", RunConfig::Command::Exhaust},
    {"rho", RunConfig::Command::Rho},             {"lambda-check", RunConfig::Command::LambdaCheck},
};

const std::vector<std::string> kKnownKeys = {
    "system", "system-a", "system-b", "psi",  "beta",         "alpha",   "t",       "n",
    "tol",    "max-depth", "symbol-cap", "target-width", "t-cap", "depth", "R", "out",
    "format", "threads",  "config"};

struct KeyValues {
    std::map<std::string, std::string> kv;

    void set(const std::string& k, const std::string& v) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), k) == kKnownKeys.end())
            throw UsageError("unknown option '--" + k + "'");
        kv[k] = v;
    }
    std::optional<std::string> get(const std::string& k) const {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    }
};

}  // namespace

std::string usage_text() {
    return
        "usage: mfs <command> [options]\n"
        "\n"
        "commands:\n"
        "  pressure      enclosures of P(t*zeta + beta*psi) on a t x beta grid\n"
        "  free-energy   t(beta) over a beta grid\n"
        "  spectrum      f(alpha) by Legendre conjugation of the free energy\n"
        "  exhaust       truncation convergence report over n in --n\n"
        "  rho           weighted sup-norm distance between two systems\n"
        "  lambda-check  single-symbol derivative ratio check\n"
        "\n"
        "options:\n"
        "  --system S        gauss | lueroth | glueroth | powerlaw:a=..,p=.. |\n"
        "                    logpower:a=.. | finite:ratios=r1,r2[,..][:offsets=..]\n"
        "                    append :trunc=N to truncate (rho: --system-a/--system-b)\n"
        "  --psi P           negid | neg2log | const:c=.. | geometric\n"
        "  --beta G          grid: a:b:step or v1,v2,... (default -5:5:0.1)\n"
        "  --alpha G         alpha grid for spectrum/exhaust\n"
        "  --t G             t grid for the pressure command\n"
        "  --n LIST          truncation sizes for exhaust, e.g. 3,5,10\n"
        "  --tol X           bisection tolerance (default 1e-3)\n"
        "  --max-depth N --symbol-cap N --target-width X   depth policy\n"
        "  --t-cap X         bisection bracket cap (default 64)\n"
        "  --depth N         rho symbol depth (default 12)\n"
        "  --R X             lambda-check ratio bound (default 2)\n"
        "  --out PATH        output file (default stdout)\n"
        "  --format F        csv | json (default csv)\n"
        "  --threads N       worker cap (default MFS_THREADS or 1)\n"
        "  --config FILE     JSON file with the same keys; flags override\n";
}

RunConfig parse_config(int argc, const char* const* argv) {
    if (argc < 2) throw UsageError("missing command\n" + usage_text());
    std::string cmd_name = argv[1];
    auto cit = kCommands.find(cmd_name);
    if (cit == kCommands.end()) throw UsageError("unknown command '" + cmd_name + "'\n" + usage_text());

    KeyValues cli;
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--", 0) != 0) throw UsageError("unexpected argument '" + arg + "'");
        std::string key = arg.substr(2);
        if (i + 1 >= argc) throw UsageError("option '--" + key + "' needs a value");
        cli.set(key, argv[++i]);
    }

    KeyValues merged;
    if (auto cfg_path = cli.get("config")) {
        std::ifstream in(*cfg_path);
        if (!in) throw UsageError("cannot read config file '" + *cfg_path + "'");
        ordered_json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw UsageError(std::string("malformed config JSON: ") + e.what());
        }
        if (!j.is_object()) throw UsageError("config file must hold a JSON object");
        for (auto& [k, v] : j.items()) {
            std::string sval;
            if (v.is_string()) sval = v.get<std::string>();
            else if (v.is_number_integer()) sval = std::to_string(v.get<long long>());
            else if (v.is_number_float()) sval = fmt17(v.get<double>());
            else throw UsageError("config key '" + k + "' must be a string or number");
            merged.set(k, sval);
        }
    }
    for (const auto& [k, v] : cli.kv)
        if (k != "config") merged.kv[k] = v;

    RunConfig cfg;
    cfg.command = cit->second;
    if (const char* env = std::getenv("MFS_THREADS")) cfg.threads = std::max(1, std::atoi(env));

    if (cfg.command == RunConfig::Command::Rho || cfg.command == RunConfig::Command::LambdaCheck) {
        auto a = merged.get("system-a"), b = merged.get("system-b");
        if (!a || !b) throw UsageError("this command needs --system-a and --system-b");
        cfg.system = parse_system(*a);
        cfg.system_b = parse_system(*b);
        cfg.has_system_b = true;
    } else {
        auto s = merged.get("system");
        if (!s) throw UsageError("missing --system");
        cfg.system = parse_system(*s);
    }
    if (auto p = merged.get("psi")) cfg.psi = parse_potential(*p);
    cfg.beta_grid = parse_grid(merged.get("beta").value_or("-5:5:0.1"));
    if (auto a = merged.get("alpha")) cfg.alpha_grid = parse_grid(*a);
    if (auto t = merged.get("t")) cfg.t_grid = parse_grid(*t);
    if (auto n = merged.get("n")) {
        for (const auto& tok : split(*n, ',')) cfg.n_list.push_back(parse_u64(tok));
    }
    if (auto v = merged.get("tol")) cfg.tol = parse_double(*v);
    if (!(cfg.tol > 0.0)) throw UsageError("tol must be positive");
    if (auto v = merged.get("max-depth")) cfg.policy.max_depth = static_cast<int>(parse_u64(*v));
    if (auto v = merged.get("symbol-cap")) cfg.policy.symbol_cap = parse_u64(*v);
    if (auto v = merged.get("target-width")) cfg.policy.target_width = parse_double(*v);
    if (auto v = merged.get("t-cap")) cfg.t_cap = parse_double(*v);
    if (auto v = merged.get("depth")) cfg.rho_depth = static_cast<int>(parse_u64(*v));
    if (auto v = merged.get("R")) cfg.lambda_R = parse_double(*v);
    if (auto v = merged.get("out")) cfg.out_path = *v;
    if (auto v = merged.get("format")) {
        if (*v == "csv") cfg.format = RunConfig::Format::Csv;
        else if (*v == "json") cfg.format = RunConfig::Format::Json;
        else throw UsageError("format must be csv or json");
    }
    if (auto v = merged.get("threads")) cfg.threads = static_cast<int>(parse_u64(*v));

    for (const auto& g : {cfg.beta_grid, cfg.alpha_grid, cfg.t_grid})
        for (std::size_t i = 1; i < g.size(); ++i)
            if (!(g[i] > g[i - 1])) throw UsageError("grids must be strictly increasing");
    return cfg;
}

namespace {

ordered_json policy_json(const DepthPolicy& pol) {
    return ordered_json{{"max_depth", pol.max_depth},
                        {"symbol_cap", pol.symbol_cap},
                        {"target_width", pol.target_width}};
}

ordered_json config_json(const RunConfig& cfg) {
    static const char* names[] = {"pressure", "free-energy", "spectrum", "exhaust", "rho", "lambda-check"};
    ordered_json j;
    j["command"] = names[static_cast<int>(cfg.command)];
    if (cfg.has_system_b) {
        j["system_a"] = cfg.system.describe();
        j["system_b"] = cfg.system_b.describe();
    } else {
        j["system"] = cfg.system.describe();
    }
    j["psi"] = cfg.psi.describe();
    j["tol"] = cfg.tol;
    j["t_cap"] = cfg.t_cap;
    j["depth_policy"] = policy_json(cfg.policy);
    j["threads"] = cfg.threads;
    return j;
}

const char* warning_name(FreeEnergyPoint::Warning w) {
    switch (w) {
        case FreeEnergyPoint::Warning::None: return "none";
        case FreeEnergyPoint::Warning::Widened: return "widened";
        case FreeEnergyPoint::Warning::CapExceeded: return "cap-exceeded";
    }
    return "?";
}

ordered_json point_json(const FreeEnergyPoint& p) {
    ordered_json j;
    j["beta"] = p.beta;
    if (p.infinite) {
        j["infinite"] = true;
    } else {
        j["infinite"] = false;
        j["t_lo"] = p.value.lo;
        j["t_hi"] = p.value.hi;
    }
    j["zero_exists"] = p.zero_exists;
    j["warning"] = warning_name(p.warning);
    return j;
}

ordered_json curve_json(const FreeEnergyCurve& c) {
    ordered_json j;
    j["points"] = ordered_json::array();
    for (const auto& p : c.points) j["points"].push_back(point_json(p));
    j["dom_lo"] = std::isfinite(c.dom_lo) ? ordered_json(c.dom_lo) : ordered_json(nullptr);
    j["dom_hi"] = std::isfinite(c.dom_hi) ? ordered_json(c.dom_hi) : ordered_json(nullptr);
    j["convexity_defect"] = c.convexity_defect;
    j["infinite_segments_valid"] = c.infinite_segments_valid;
    return j;
}

ordered_json spectrum_json(const SpectrumCurve& s) {
    ordered_json j;
    j["alpha_minus"] = s.alpha_minus;
    j["alpha_plus"] = s.alpha_plus;
    j["points"] = ordered_json::array();
    for (const auto& p : s.points) {
        ordered_json q;
        q["alpha"] = p.alpha;
        if (p.neg_infinity) {
            q["neg_infinity"] = true;
        } else {
            q["f"] = p.value;
            q["unclamped"] = p.unclamped;
        }
        q["region"] = p.region == SpectrumPoint::Region::Interior ? "interior" : "boundary-or-exterior";
        q["clamped"] = p.clamped;
        if (p.clamp_anomaly) q["clamp_anomaly"] = true;
        j["points"].push_back(q);
    }
    return j;
}

int curve_exit_code(const FreeEnergyCurve& c) {
    for (const auto& p : c.points)
        if (p.warning != FreeEnergyPoint::Warning::None) return 1;
    return 0;
}

struct Report {
    std::string csv;
    ordered_json json;
    int exit_code = 0;
};

Report run_pressure(const RunConfig& cfg) {
    Report rep;
    std::vector<double> ts = cfg.t_grid.empty() ? std::vector<double>{1.0} : cfg.t_grid;
    std::ostringstream csv;
    csv << "t,beta,kind,lo,hi\n";
    ordered_json rows = ordered_json::array();
    PressureEvaluator ev(cfg.system, cfg.psi, cfg.policy);  // word tables built once
    for (double t : ts) {
        for (double b : cfg.beta_grid) {
            PressureValue pv = ev.eval(t, b);
            ordered_json j{{"t", t}, {"beta", b}};
            switch (pv.kind) {
                case PressureValue::Kind::Finite:
                    csv << fmt17(t) << ',' << fmt17(b) << ",finite," << fmt17(pv.enc.lo) << ','
                        << fmt17(pv.enc.hi) << '\n';
                    j["kind"] = "finite";
                    j["lo"] = pv.enc.lo;
                    j["hi"] = pv.enc.hi;
                    break;
                case PressureValue::Kind::PlusInfinity:
                    csv << fmt17(t) << ',' << fmt17(b) << ",plus-infinity,,\n";
                    j["kind"] = "plus-infinity";
                    break;
                case PressureValue::Kind::Indeterminate:
                    csv << fmt17(t) << ',' << fmt17(b) << ",indeterminate," << fmt17(pv.lower) << ",\n";
                    j["kind"] = "indeterminate";
                    j["lower"] = pv.lower;
                    rep.exit_code = 1;
                    break;
            }
            rows.push_back(j);
        }
    }
    rep.csv = csv.str();
    rep.json["points"] = rows;
    return rep;
}

Report run_free_energy(const RunConfig& cfg) {
    Report rep;
    if (cfg.beta_grid.size() < 3) throw UsageError("free-energy needs a beta grid of at least 3 points");
    FreeEnergyCurve curve =
        free_energy_curve(cfg.system, cfg.psi, cfg.beta_grid, cfg.tol, cfg.policy, cfg.t_cap, cfg.threads);
    std::ostringstream csv;
    csv << "beta,t_lo,t_hi,infinite,zero_exists\n";
    for (const auto& p : curve.points) {
        if (p.infinite)
            csv << fmt17(p.beta) << ",inf,inf,1," << (p.zero_exists ? 1 : 0) << '\n';
        else
            csv << fmt17(p.beta) << ',' << fmt17(p.value.lo) << ',' << fmt17(p.value.hi) << ",0,"
                << (p.zero_exists ? 1 : 0) << '\n';
    }
    rep.csv = csv.str();
    rep.json = curve_json(curve);
    rep.exit_code = curve_exit_code(curve);
    return rep;
}

Report run_spectrum(const RunConfig& cfg) {
    Report rep;
    if (cfg.alpha_grid.empty()) throw UsageError("spectrum needs --alpha");
    if (cfg.beta_grid.size() < 3) throw UsageError("spectrum needs a beta grid of at least 3 points");
    FreeEnergyCurve curve =
        free_energy_curve(cfg.system, cfg.psi, cfg.beta_grid, cfg.tol, cfg.policy, cfg.t_cap, cfg.threads);
    SpectrumCurve sc = spectrum(curve, cfg.alpha_grid);
    std::ostringstream csv;
    csv << "alpha,f,region,clamped\n";
    for (const auto& p : sc.points) {
        csv << fmt17(p.alpha) << ',';
        if (p.neg_infinity) csv << "-inf";
        else csv << fmt17(p.value);
        csv << ',' << (p.region == SpectrumPoint::Region::Interior ? "interior" : "boundary-or-exterior")
            << ',' << (p.clamped ? 1 : 0) << '\n';
    }
    rep.csv = csv.str();
    rep.json["free_energy"] = curve_json(curve);
    rep.json["spectrum"] = spectrum_json(sc);
    rep.exit_code = curve_exit_code(curve);
    return rep;
}

Report run_exhaust(const RunConfig& cfg) {
    Report rep;
    if (cfg.n_list.empty()) throw UsageError("exhaust needs --n");
    if (cfg.alpha_grid.empty()) throw UsageError("exhaust needs --alpha");
    if (cfg.beta_grid.size() < 3) throw UsageError("exhaust needs a beta grid of at least 3 points");
    ConvergenceReport cr = exhaust_run(cfg.system, cfg.psi, cfg.n_list, cfg.beta_grid, cfg.alpha_grid,
                                       cfg.tol, cfg.policy, cfg.t_cap, cfg.threads);
    std::ostringstream csv;
    csv << "n,alpha_minus,alpha_plus,rho_lo,rho_hi,boundary_f,interior_f_max,boundary_collapse,"
           "second_order_kink\n";
    for (const auto& row : cr.rows) {
        csv << row.n << ',' << fmt17(row.alpha_minus_n) << ',' << fmt17(row.alpha_plus_n) << ','
            << fmt17(row.rho_to_full.lo) << ',' << fmt17(row.rho_to_full.hi) << ','
            << fmt17(row.boundary_f_estimate) << ',' << fmt17(row.interior_f_max) << ','
            << (row.boundary_collapse ? 1 : 0) << ',' << (row.second_order_kink ? 1 : 0) << '\n';
    }
    rep.csv = csv.str();

    ordered_json rows = ordered_json::array();
    for (const auto& row : cr.rows) {
        ordered_json j;
        j["n"] = row.n;
        j["free_energy"] = curve_json(row.curve);
        j["spectrum"] = spectrum_json(row.spec);
        j["alpha_minus"] = row.alpha_minus_n;
        j["alpha_plus"] = row.alpha_plus_n;
        j["rho_to_full"] = ordered_json{{"lo", row.rho_to_full.lo}, {"hi", row.rho_to_full.hi}};
        j["boundary_f_estimate"] = row.boundary_f_estimate;
        j["interior_f_max"] = row.interior_f_max;
        j["flags_heuristic"] = ordered_json{{"boundary_collapse", row.boundary_collapse},
                                            {"second_order_kink", row.second_order_kink}};
        rows.push_back(j);
        if (curve_exit_code(row.curve)) rep.exit_code = 1;
    }
    rep.json["rows"] = rows;
    rep.json["t_trend"] = cr.t_trend;
    rep.json["spectrum_increments"] = cr.spectrum_increments;
    rep.json["flags_heuristic"] =
        ordered_json{{"escaping_boundary", cr.escaping_boundary},
                     {"second_order_kink", cr.any_second_order_kink}};
    rep.json["regular_convergence_certificate"] =
        ordered_json{{"k", cr.certificate.k}, {"C", cr.certificate.C},
                     {"justification", cr.certificate.justification}};
    if (cr.full_curve) rep.json["full_system"] = curve_json(*cr.full_curve);
    return rep;
}

Report run_rho(const RunConfig& cfg) {
    Report rep;
    Enclosure d = rho_distance(cfg.system, cfg.system_b, cfg.rho_depth);
    std::ostringstream csv;
    csv << "depth,lo,hi\n" << cfg.rho_depth << ',' << fmt17(d.lo) << ',' << fmt17(d.hi) << '\n';
    rep.csv = csv.str();
    rep.json["depth"] = cfg.rho_depth;
    rep.json["lo"] = d.lo;
    rep.json["hi"] = d.hi;
    return rep;
}

Report run_lambda(const RunConfig& cfg) {
    Report rep;
    LambdaRatioResult r = lambda_ratio_check(cfg.system, cfg.system_b, cfg.lambda_R);
    std::ostringstream csv;
    csv << "pass,worst_ratio,worst_symbol,tail_bounded\n"
        << (r.pass ? 1 : 0) << ',' << fmt17(r.worst_ratio) << ',' << r.worst_symbol << ','
        << (r.tail_bounded ? 1 : 0) << '\n';
    rep.csv = csv.str();
    rep.json["pass"] = r.pass;
    rep.json["worst_ratio"] = std::isfinite(r.worst_ratio) ? ordered_json(r.worst_ratio)
                                                           : ordered_json("unbounded");
    rep.json["worst_symbol"] = r.worst_symbol;
    rep.json["tail_bounded"] = r.tail_bounded;
    return rep;
}

}  // namespace

int run_command(const RunConfig& cfg) {
    Report rep;
    switch (cfg.command) {
        case RunConfig::Command::Pressure: rep = run_pressure(cfg); break;
        case RunConfig::Command::FreeEnergy: rep = run_free_energy(cfg); break;
        case RunConfig::Command::Spectrum: rep = run_spectrum(cfg); break;
        case RunConfig::Command::Exhaust: rep = run_exhaust(cfg); break;
        case RunConfig::Command::Rho: rep = run_rho(cfg); break;
        case RunConfig::Command::LambdaCheck: rep = run_lambda(cfg); break;
    }

    std::string payload;
    if (cfg.format == RunConfig::Format::Csv) {
        payload = rep.csv;
    } else {
        ordered_json doc;
        doc["config"] = config_json(cfg);
        doc["result"] = rep.json;
        doc["exit_code"] = rep.exit_code;
        payload = doc.dump(2);
        payload += '\n';
    }

    if (cfg.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write output file '" + cfg.out_path + "'");
        out << payload;
        if (!out.good()) throw std::runtime_error("write failed for '" + cfg.out_path + "'");
    }
    return rep.exit_code;
}

}  // namespace mfs
