#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcpl/errors.hpp"
#include "qcpl/ncwords.hpp"
#include "qcpl/pullback.hpp"

namespace qcpl::cli {

namespace {

using Json = nlohmann::ordered_json;

// %#.17g keeps trailing zeros, so every finite double prints with 17
// significant digits and round-trips exactly.
std::string fmt_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%#.17g", v);
    return buf;
}

void dump_json(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + Json(it.key()).dump() + ": ";
                dump_json(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_json(item, out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += fmt_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

/// Hard-check bookkeeping: every check lands in the document, the first
/// failing class decides the nonzero exit code.
struct CheckSet {
    Json list = Json::array();
    bool all_pass = true;
    std::string first_fail;

    void add(const std::string& cls, const std::string& name, bool pass, double value,
             double threshold) {
        Json entry{{"name", name}, {"class", cls}, {"pass", pass}};
        if (std::isfinite(value)) entry["value"] = value;
        if (std::isfinite(threshold)) entry["threshold"] = threshold;
        list.push_back(std::move(entry));
        if (!pass && all_pass) {
            all_pass = false;
            first_fail = cls;
        } else if (!pass) {
            all_pass = false;
        }
    }
};

constexpr double kNoValue = std::numeric_limits<double>::quiet_NaN();

bool wants(const RunConfig& cfg, std::initializer_list<const char*> subs) {
    if (cfg.subcommand == "report") return true;
    for (const char* s : subs)
        if (cfg.subcommand == s) return true;
    return false;
}

Json symbolic_section(CheckSet& checks) {
    Json arr = Json::array();
    for (const auto& check : symbolic_identity_suite()) {
        arr.push_back(Json{{"identity", check.name}, {"proven", check.proven}});
        checks.add("symbolic", check.name, check.proven, kNoValue, kNoValue);
    }
    return arr;
}

Json expansion_section() {
    static const std::vector<std::pair<const char*, CanonicalProduct>> kProducts = {
        {"x1*x1", CanonicalProduct::X1adjX1}, {"x2*x2", CanonicalProduct::X2adjX2},
        {"x1*x2", CanonicalProduct::X1adjX2}, {"x2*x1", CanonicalProduct::X2adjX1},
        {"x1x1*", CanonicalProduct::X1X1adj}, {"x2x2*", CanonicalProduct::X2X2adj}};
    Json arr = Json::array();
    for (const auto& [name, which] : kProducts)
        arr.push_back(Json{{"product", name}, {"normal_form", expand_canonical(which).str()}});
    return arr;
}

Json eigenvalue_rows(const DecompositionReport& rep, CheckSet& checks) {
    Json rows = Json::array();
    double max_dev = 0, max_res = 0;
    for (const auto& row : rep.eigenvalues) {
        rows.push_back(Json{{"k", row.k},
                            {"formula", row.formula},
                            {"measured", row.measured},
                            {"residual", row.residual}});
        if (row.k <= rep.basis_size - 2) {
            max_dev = std::max(max_dev, std::abs(row.measured - row.formula));
            max_res = std::max(max_res, row.residual);
        }
    }
    checks.add("eigenvalue", "measured eigenvalue matches recursion", max_dev < thresholds::kTrustedPass,
               max_dev, thresholds::kTrustedPass);
    checks.add("eigenvalue", "eigen-residual", max_res < thresholds::kTrustedPass, max_res,
               thresholds::kTrustedPass);
    return rows;
}

Json weight_rows(const DecompositionReport& rep, CheckSet& checks) {
    Json rows = Json::array();
    double max_res = 0, max_leak = 0;
    for (const auto& row : rep.weights) {
        rows.push_back(Json{{"k", row.k},
                            {"formula", row.formula},
                            {"measured", complex_pair(row.measured)},
                            {"residual", row.residual},
                            {"leakage", row.leakage}});
        max_res = std::max(max_res, row.residual);
        max_leak = std::max(max_leak, row.leakage);
    }
    checks.add("weight", "measured weight matches formula", max_res < thresholds::kTrustedPass,
               max_res, thresholds::kTrustedPass);
    checks.add("weight", "off-shift leakage", max_leak < thresholds::kTrustedPass, max_leak,
               thresholds::kTrustedPass);
    return rows;
}

Json decomposition_section(const DecompositionReport& rep, CheckSet& checks) {
    Json d;
    d["trace_p1"] = rep.trace_p1;
    d["trace_p2"] = rep.trace_p2;
    d["idem_p1"] = rep.idem_p1;
    d["idem_p2"] = rep.idem_p2;
    d["seed_overlap"] = rep.seed_overlap;
    d["kernel_overlap"] = rep.kernel_overlap;
    d["kernel_residual"] = rep.kernel_residual;
    d["x2t_isometry_defect"] = rep.x2t_isometry_defect;
    d["x1t_coisometry_defect"] = rep.x1t_coisometry_defect;
    d["matrix_unit_map_residual"] = rep.matrix_unit_map_residual;
    d["matrix_unit_annih_residual"] = rep.matrix_unit_annih_residual;
    d["max_margin_mass"] = rep.max_margin_mass;
    d["x1_interior_null"] = rep.x1_interior_null;
    d["x2_interior_null"] = rep.x2_interior_null;
    d["wold_unitary_dim_estimate"] = rep.wold_unitary_dim_estimate;

    checks.add("decomposition", "trace(p1) near 1",
               std::abs(rep.trace_p1 - 1.0) < thresholds::kSeedTracePass,
               std::abs(rep.trace_p1 - 1.0), thresholds::kSeedTracePass);
    checks.add("decomposition", "trace(p2) near 1",
               std::abs(rep.trace_p2 - 1.0) < thresholds::kSeedTracePass,
               std::abs(rep.trace_p2 - 1.0), thresholds::kSeedTracePass);
    checks.add("decomposition", "seed orthogonality", rep.seed_overlap < thresholds::kTrustedPass,
               rep.seed_overlap, thresholds::kTrustedPass);
    checks.add("decomposition", "x2~ isometry on trusted block",
               rep.x2t_isometry_defect < thresholds::kGaugePass, rep.x2t_isometry_defect,
               thresholds::kGaugePass);
    checks.add("decomposition", "x1~ surjective on trusted block",
               rep.x1t_coisometry_defect < thresholds::kTrustedPass, rep.x1t_coisometry_defect,
               thresholds::kTrustedPass);
    checks.add("decomposition", "kernel-vector overlap",
               rep.kernel_overlap > 1.0 - thresholds::kTrustedPass, 1.0 - rep.kernel_overlap,
               thresholds::kTrustedPass);
    checks.add("decomposition", "kernel-vector residual",
               rep.kernel_residual < thresholds::kGaugePass, rep.kernel_residual,
               thresholds::kGaugePass);
    checks.add("decomposition", "matrix unit maps v1 to v3",
               rep.matrix_unit_map_residual < thresholds::kTrustedPass,
               rep.matrix_unit_map_residual, thresholds::kTrustedPass);
    checks.add("decomposition", "matrix unit annihilates v2, v4",
               rep.matrix_unit_annih_residual < thresholds::kTrustedPass,
               rep.matrix_unit_annih_residual, thresholds::kTrustedPass);
    return d;
}

Json h0_section(const H0Probe& probe) {
    Json h;
    h["complement_dim"] = probe.complement_dim;
    if (probe.max_deviation) h["max_deviation"] = *probe.max_deviation;
    return h;
}

Json sample_json(const std::string& op, const std::string& chain, const SymbolSample& sample) {
    Json coeffs = Json::array();
    for (const auto& [d, v] : sample.coeffs) {
        double scatter = sample.scatter.count(d) ? sample.scatter.at(d) : 0.0;
        coeffs.push_back(
            Json{{"freq", d}, {"value", complex_pair(v)}, {"scatter", scatter}});
    }
    return Json{{"operator", op}, {"subspace", chain}, {"coeffs", std::move(coeffs)}};
}

Json symbols_section(const TruncationContext& ctx, const Pipeline& pipe, const RunConfig& cfg,
                     CheckSet& checks, bool& pullback_pass) {
    const Matrix x1a_x1 = pipe.x1.adjoint() * pipe.x1;
    const Matrix x2a_x2 = pipe.x2.adjoint() * pipe.x2;
    const Matrix x1a_x2 = pipe.x1.adjoint() * pipe.x2;

    Json arr = Json::array();
    SymbolSample s11[3], s22[3], ssh[3], s12[3];
    for (int chain : {1, 2}) {
        s11[chain] = symbol_estimate(x1a_x1, pipe.basis, chain, cfg.max_freq);
        s22[chain] = symbol_estimate(x2a_x2, pipe.basis, chain, cfg.max_freq);
        ssh[chain] = symbol_estimate(pipe.shift, pipe.basis, chain, cfg.max_freq);
        s12[chain] = symbol_estimate(x1a_x2, pipe.basis, chain, cfg.max_freq);
        std::string name = chain == 1 ? "H1" : "H2";
        arr.push_back(sample_json("x1*x1", name, s11[chain]));
        arr.push_back(sample_json("x2*x2", name, s22[chain]));
        arr.push_back(sample_json("x1~*x2~", name, ssh[chain]));
        arr.push_back(sample_json("x1*x2", name, s12[chain]));
    }

    for (int chain : {1, 2}) {
        std::string tag = chain == 1 ? " (H1)" : " (H2)";
        checks.add("symbol", "sigma(x1*x1) = c" + tag,
                   std::abs(s11[chain].coeff(0) - ctx.c) < thresholds::kSymbolPass,
                   std::abs(s11[chain].coeff(0) - ctx.c), thresholds::kSymbolPass);
        checks.add("symbol", "sigma(x2*x2) = 1" + tag,
                   std::abs(s22[chain].coeff(0) - 1.0) < thresholds::kSymbolPass,
                   std::abs(s22[chain].coeff(0) - 1.0), thresholds::kSymbolPass);
        double off = 0.0;
        for (const auto& [d, v] : ssh[chain].coeffs)
            if (d != 1) off = std::max(off, std::abs(v));
        checks.add("symbol", "sigma(x1~*x2~) = id, shift coefficient" + tag,
                   std::abs(ssh[chain].coeff(1) - 1.0) < thresholds::kSymbolPass,
                   std::abs(ssh[chain].coeff(1) - 1.0), thresholds::kSymbolPass);
        checks.add("symbol", "sigma(x1~*x2~) = id, other coefficients" + tag,
                   off < thresholds::kSymbolPass, off, thresholds::kSymbolPass);
    }

    PullbackReport pull = pullback_check(
        {{"x1~*x2~", pipe.shift}, {"x1*x1", x1a_x1}, {"x2*x2", x2a_x2}}, pipe.basis, cfg.max_freq);
    pullback_pass = pull.pass;
    for (const auto& entry : pull.entries)
        checks.add("pullback", "H1/H2 symbols agree: " + entry.name, entry.pass,
                   entry.max_coeff_dev, thresholds::kSymbolPass);
    return arr;
}

Json winding_section(const TruncationContext& ctx, const Pipeline& pipe, const RunConfig& cfg,
                     CheckSet& checks) {
    const int lo = ctx.trusted() / 2;
    const int hi = ctx.trusted() - 2;
    SymbolSample amb_x1 = symbol_estimate_standard(pipe.x1, lo, hi, cfg.max_freq);
    SymbolSample amb_x2 = symbol_estimate_standard(pipe.x2, lo, hi, cfg.max_freq);
    SymbolSample amb_x1a_x2 =
        symbol_estimate_standard(pipe.x1.adjoint() * pipe.x2, lo, hi, cfg.max_freq);
    int w_x1 = winding_index(amb_x1, cfg.grid_size);
    int w_x2 = winding_index(amb_x2, cfg.grid_size);
    int w_x1a_x2 = winding_index(amb_x1a_x2, cfg.grid_size);
    int w_inter = winding_index(symbol_estimate(pipe.shift, pipe.basis, 0, cfg.max_freq),
                                cfg.grid_size);
    int w_h1 = winding_index(symbol_estimate(pipe.shift, pipe.basis, 1, cfg.max_freq),
                             cfg.grid_size);
    int w_h2 = winding_index(symbol_estimate(pipe.shift, pipe.basis, 2, cfg.max_freq),
                             cfg.grid_size);

    Json w;
    w["x1_ambient_winding"] = w_x1;
    w["x1_index"] = -w_x1;
    w["x2_ambient_winding"] = w_x2;
    w["x2_index"] = -w_x2;
    w["x1adj_x2_ambient_winding"] = w_x1a_x2;
    w["x1adj_x2_index"] = -w_x1a_x2;
    w["shift_interleaved_winding"] = w_inter;
    w["shift_interleaved_index"] = -w_inter;
    w["shift_h1_winding"] = w_h1;
    w["shift_h2_winding"] = w_h2;

    checks.add("index", "x1 has index 1", w_x1 == -1, w_x1, kNoValue);
    checks.add("index", "x2 has index -1", w_x2 == 1, w_x2, kNoValue);
    checks.add("index", "x1*x2 has index -2", w_x1a_x2 == 2, w_x1a_x2, kNoValue);
    checks.add("index", "x1~*x2~ has ambient index -2", w_inter == 2, w_inter, kNoValue);
    checks.add("index", "x1~*x2~ is a shift on each chain", w_h1 == 1 && w_h2 == 1, kNoValue,
               kNoValue);
    return w;
}

Json gauge_section(const TruncationContext& ctx, const RunConfig& cfg, CheckSet& checks) {
    std::vector<Complex> ts;
    Json angles = Json::array();
    for (double a : cfg.gauge_angles) {
        ts.push_back(std::polar(1.0, a));
        angles.push_back(a);
    }
    GaugeCheck g = gauge_check(ctx, ts);
    Json out;
    out["t1_angles"] = std::move(angles);
    out["spectrum_max_dev"] = g.spectrum_max_dev;
    out["singular_max_dev"] = g.singular_max_dev;
    out["conjugation_residual"] = g.conjugation_residual;
    checks.add("gauge", "x1*x1 spectra t-independent", g.spectrum_max_dev < thresholds::kGaugePass,
               g.spectrum_max_dev, thresholds::kGaugePass);
    checks.add("gauge", "x1*x2 singular values t-independent",
               g.singular_max_dev < thresholds::kGaugePass, g.singular_max_dev,
               thresholds::kGaugePass);
    checks.add("gauge", "diagonal conjugation identity",
               g.conjugation_residual < thresholds::kGaugePass, g.conjugation_residual,
               thresholds::kGaugePass);
    return out;
}

Json run_params(const RunConfig& cfg, double q, double c) {
    Json p;
    p["q"] = q;
    p["c"] = c;
    p["t1_angle"] = cfg.t1_angle;
    p["n"] = cfg.n;
    p["k"] = cfg.k;
    p["tol"] = cfg.tol;
    p["margin"] = cfg.margin;
    return p;
}

// One grid point. The caller merges the result into the document.
Json numeric_run(const RunConfig& cfg, double q, double c, CheckSet& checks) {
    TruncationContext ctx(q, c, std::polar(1.0, cfg.t1_angle), cfg.n, cfg.tol, cfg.margin);
    Json run;
    run["params"] = run_params(cfg, q, c);

    const bool needs_pipeline =
        wants(cfg, {"decompose", "spectrum", "weights", "symbol", "index", "h0-probe"});
    if (needs_pipeline) {
        Pipeline pipe = run_pipeline(ctx, cfg.k);
        const DecompositionReport& rep = pipe.report;

        if (wants(cfg, {"decompose", "spectrum"})) run["eigenvalues"] = eigenvalue_rows(rep, checks);
        if (wants(cfg, {"decompose", "weights"})) run["weights"] = weight_rows(rep, checks);
        if (wants(cfg, {"decompose"})) {
            run["gram_max_dev"] = rep.gram_max_dev;
            run["intertwine_residual"] = rep.intertwine_residual;
            checks.add("decomposition", "v-basis Gram deviation",
                       rep.gram_max_dev < thresholds::kTrustedPass, rep.gram_max_dev,
                       thresholds::kTrustedPass);
            checks.add("intertwine", "intertwining residual on trusted block",
                       rep.intertwine_residual < thresholds::kTrustedPass, rep.intertwine_residual,
                       thresholds::kTrustedPass);
            run["decomposition"] = decomposition_section(rep, checks);
        }
        if (wants(cfg, {"symbol"})) {
            bool pull = false;
            run["symbols"] = symbols_section(ctx, pipe, cfg, checks, pull);
            run["pullback_pass"] = pull;
        }
        if (wants(cfg, {"index"})) run["winding"] = winding_section(ctx, pipe, cfg, checks);
        if (wants(cfg, {"decompose", "h0-probe"})) run["h0_probe"] = h0_section(rep.h0);
    }
    if (wants(cfg, {"gauge"})) run["gauge"] = gauge_section(ctx, cfg, checks);
    return run;
}

}  // namespace

RunOutcome run_report(const RunConfig& config) {
    static const std::vector<std::string> kSubcommands{
        "verify-symbolic", "decompose", "weights", "spectrum", "symbol",
        "index",           "gauge",     "h0-probe", "report"};
    RunOutcome outcome;
    if (std::find(kSubcommands.begin(), kSubcommands.end(), config.subcommand) ==
        kSubcommands.end()) {
        outcome.exit_code = kUsage;
        outcome.first_failure = "usage";
        return outcome;
    }

    CheckSet checks;
    Json doc;

    // Validate every grid point before any computation starts.
    try {
        for (double q : config.q_grid)
            for (double c : config.c_grid)
                TruncationContext ctx(q, c, std::polar(1.0, config.t1_angle), config.n, config.tol,
                                      config.margin);
    } catch (const std::exception& e) {
        std::cerr << "qcpl: invalid parameters: " << e.what() << "\n";
        outcome.exit_code = kUsage;
        outcome.first_failure = "usage";
        return outcome;
    }

    Json top_params;
    top_params["subcommand"] = config.subcommand;
    top_params["q"] = config.q_grid;
    top_params["c"] = config.c_grid;
    top_params["t1_angle"] = config.t1_angle;
    top_params["n"] = config.n;
    top_params["k"] = config.k;
    top_params["tol"] = config.tol;
    top_params["margin"] = config.margin;
    doc["params"] = std::move(top_params);

    if (config.subcommand == "verify-symbolic" || config.subcommand == "report") {
        doc["symbolic"] = symbolic_section(checks);
        doc["expansions"] = expansion_section();
    }

    const bool numeric = config.subcommand != "verify-symbolic";
    try {
        if (numeric && config.q_grid.size() == 1 && config.c_grid.size() == 1) {
            Json run = numeric_run(config, config.q_grid[0], config.c_grid[0], checks);
            for (auto it = run.begin(); it != run.end(); ++it)
                if (it.key() != "params") doc[it.key()] = it.value();
        } else if (numeric) {
            Json runs = Json::array();
            for (double q : config.q_grid)
                for (double c : config.c_grid) runs.push_back(numeric_run(config, q, c, checks));
            doc["runs"] = std::move(runs);
        }
    } catch (const VerificationFailure& e) {
        doc["error"] = e.what();
        outcome.exit_code = kCheckFailure;
        outcome.first_failure = "verification";
    } catch (const DegenerateTruncation& e) {
        doc["error"] = e.what();
        outcome.exit_code = kDegeneracy;
        outcome.first_failure = "degeneracy";
    } catch (const TruncationTooSmall& e) {
        doc["error"] = e.what();
        outcome.exit_code = kDegeneracy;
        outcome.first_failure = "degeneracy";
    } catch (const DecompositionFailure& e) {
        doc["error"] = e.what();
        outcome.exit_code = kDegeneracy;
        outcome.first_failure = "degeneracy";
    } catch (const UnreliableSymbol& e) {
        doc["error"] = e.what();
        outcome.exit_code = kDegeneracy;
        outcome.first_failure = "unreliable-symbol";
    } catch (const IndexUndefined& e) {
        doc["error"] = e.what();
        outcome.exit_code = kDegeneracy;
        outcome.first_failure = "index-undefined";
    }

    doc["checks"] = checks.list;
    doc["pass"] = checks.all_pass && outcome.exit_code == kPass;
    if (outcome.exit_code == kPass && !checks.all_pass) {
        outcome.exit_code = kCheckFailure;
        outcome.first_failure = checks.first_fail;
    }
    outcome.document = std::move(doc);
    return outcome;
}

std::string to_json_text(const Json& doc) {
    std::string out;
    dump_json(doc, out, 0);
    out += "\n";
    return out;
}

namespace {

void csv_rows_for_run(const Json& run, std::string& out) {
    const Json& params = run.at("params");
    std::string prefix = fmt_double(params.at("q").get<double>()) + "," +
                         fmt_double(params.at("c").get<double>()) + "," +
                         fmt_double(params.at("t1_angle").get<double>()) + "," +
                         std::to_string(params.at("n").get<int>()) + ",";
    if (run.contains("eigenvalues")) {
        for (const auto& row : run.at("eigenvalues")) {
            out += "eigenvalue," + prefix + std::to_string(row.at("k").get<int>()) + "," +
                   fmt_double(row.at("formula").get<double>()) + "," +
                   fmt_double(row.at("measured").get<double>()) + ",0," +
                   fmt_double(row.at("residual").get<double>()) + ",\n";
        }
    }
    if (run.contains("weights")) {
        for (const auto& row : run.at("weights")) {
            out += "weight," + prefix + std::to_string(row.at("k").get<int>()) + "," +
                   fmt_double(row.at("formula").get<double>()) + "," +
                   fmt_double(row.at("measured")[0].get<double>()) + "," +
                   fmt_double(row.at("measured")[1].get<double>()) + "," +
                   fmt_double(row.at("residual").get<double>()) + "," +
                   fmt_double(row.at("leakage").get<double>()) + "\n";
        }
    }
}

}  // namespace

std::string to_csv_text(const Json& doc) {
    std::string out = "table,q,c,t1_angle,n,k,formula,measured_re,measured_im,residual,leakage\n";
    if (doc.contains("runs")) {
        for (const auto& run : doc.at("runs")) csv_rows_for_run(run, out);
    } else if (doc.contains("eigenvalues") || doc.contains("weights")) {
        Json flat = doc;
        flat["params"]["q"] = doc.at("params").at("q")[0];
        flat["params"]["c"] = doc.at("params").at("c")[0];
        csv_rows_for_run(flat, out);
    }
    return out;
}

int emit(const RunOutcome& outcome, const RunConfig& config) {
    std::string text = config.format == "csv" ? to_csv_text(outcome.document)
                                              : to_json_text(outcome.document);
    if (config.out.empty()) {
        std::cout << text;
        if (!std::cout) return kIo;
        return outcome.exit_code;
    }
    std::ofstream f(config.out, std::ios::binary);
    if (!f) {
        std::cerr << "qcpl: cannot open " << config.out << " for writing\n";
        return kIo;
    }
    f << text;
    f.flush();
    if (!f) {
        std::cerr << "qcpl: write to " << config.out << " failed\n";
        return kIo;
    }
    return outcome.exit_code;
}

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        if (piece.empty()) continue;
        std::size_t used = 0;
        double v = std::stod(piece, &used);
        if (used != piece.size()) throw CLI::ValidationError("not a number: " + piece);
        out.push_back(v);
    }
    return out;
}

}  // namespace

int main_impl(int argc, char** argv) {
    CLI::App app{"Symbolic and numerical verification of the q-deformed projective-line algebra"};
    app.require_subcommand(1);

    RunConfig config;
    std::string q_text = "2", c_text = "1", angles_text = "0,1.0471975511965976";

    static const std::vector<std::pair<std::string, std::string>> kSubs = {
        {"verify-symbolic", "prove the generator identities exactly"},
        {"decompose", "run the invariant-subspace decomposition"},
        {"weights", "measure the double-shift weights"},
        {"spectrum", "measure the eigenvalue ladder"},
        {"symbol", "estimate Toeplitz symbols and check pullback membership"},
        {"index", "compute winding-number Fredholm indices"},
        {"gauge", "check circle-parameter redundancy"},
        {"h0-probe", "probe the complement of the shift chains"},
        {"report", "run everything and emit the full report"},
    };
    for (const auto& [name, desc] : kSubs) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--q", q_text, "deformation parameter q > 1 (comma list for a grid)");
        sub->add_option("--c", c_text, "level parameter c > 0 (comma list for a grid)");
        sub->add_option("--t1-angle", config.t1_angle, "angle of the circle parameter t1");
        sub->add_option("--n", config.n, "truncation dimension");
        sub->add_option("--k", config.k, "v-basis length");
        sub->add_option("--tol", config.tol, "relative spectral threshold");
        sub->add_option("--margin", config.margin, "boundary exclusion width");
        sub->add_option("--format", config.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", config.out, "output path (default: stdout)");
        sub->add_option("--t1-angles", angles_text, "comma list of gauge angles");
        sub->add_option("--max-freq", config.max_freq, "symbol bandwidth");
        sub->add_option("--grid-size", config.grid_size, "winding evaluation grid");
    }

    try {
        app.parse(argc, argv);
        config.subcommand = app.get_subcommands().at(0)->get_name();
        config.q_grid = parse_list(q_text);
        config.c_grid = parse_list(c_text);
        config.gauge_angles = parse_list(angles_text);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "qcpl: " << e.what() << "\n";
        return kUsage;
    }

    RunOutcome outcome = run_report(config);
    if (outcome.exit_code == kUsage) return kUsage;
    int code = emit(outcome, config);
    if (!outcome.first_failure.empty())
        std::cerr << "qcpl: first failing check class: " << outcome.first_failure << "\n";
    return code;
}

}  // namespace qcpl::cli
