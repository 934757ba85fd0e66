// patmap: trace-driven memory access pattern toolkit.
//
// Subcommands compose through CSV files: gen | classify | simulate | metrics |
// ptmap | advise | report. Exit codes: 0 success, 2 parameter error, 3 input
// format error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "patmap/classifier.hpp"
#include "patmap/config.hpp"
#include "patmap/errors.hpp"
#include "patmap/memsim.hpp"
#include "patmap/metrics.hpp"
#include "patmap/policy.hpp"
#include "patmap/profiler.hpp"
#include "patmap/ptmap.hpp"
#include "patmap/report.hpp"
#include "patmap/svg_render.hpp"
#include "patmap/synthgen.hpp"
#include "patmap/trace_io.hpp"

using namespace patmap;
namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::vector<std::string> overrides; // --set key=value
    std::optional<uint64_t> seed;
    std::string format = "text";
    std::string out;

    KeyValueConfig config() const {
        KeyValueConfig kv =
            config_path.empty() ? KeyValueConfig{} : KeyValueConfig::from_file(config_path);
        for (const std::string& kvpair : overrides) {
            const auto eq = kvpair.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ParamError("--set expects key=value, got '" + kvpair + "'");
            kv.set(kvpair.substr(0, eq), kvpair.substr(eq + 1));
        }
        return kv;
    }
    TraceFormat trace_format() const {
        if (format == "text") return TraceFormat::Text;
        if (format == "binary") return TraceFormat::Binary;
        throw ParamError("--format must be text or binary");
    }
};

void add_global_opts(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--config", g.config_path, "key=value configuration file");
    cmd->add_option("--set", g.overrides, "override one configuration key, e.g. --set sim.mshr=4");
    cmd->add_option("--seed", g.seed, "override the generator seed");
    cmd->add_option("--format", g.format, "trace output format: text|binary")
        ->check(CLI::IsMember({"text", "binary"}));
    cmd->add_option("--out", g.out, "output path (default: stdout)");
}

void write_output(const GlobalOpts& g, const std::string& data) {
    if (g.out.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw FormatError("cannot open for writing: " + g.out);
    f << data;
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open for writing: " + path);
    f << data;
}

Trace read_trace_checked(const std::string& path) {
    Trace t = read_trace_file(path);
    const ValidationReport rep = validate_trace(t);
    if (!rep.ok) {
        const Violation& v = rep.violations.front();
        const std::string where =
            v.index == Violation::npos ? "" : " (record " + std::to_string(v.index) + ")";
        throw FormatError(path + ": " + v.reason + where);
    }
    return t;
}

ClassifierConfig classifier_config(const KeyValueConfig& kv) {
    ClassifierConfig cfg;
    cfg.c = kv.get_u64("classifier.c", cfg.c);
    cfg.d = kv.get_u64("classifier.d", cfg.d);
    cfg.r2_line = kv.get_double("classifier.r2_line", cfg.r2_line);
    cfg.cv_fixed = kv.get_double("classifier.cv_fixed", cfg.cv_fixed);
    cfg.slope_hi = kv.get_double("classifier.slope_hi", static_cast<double>(cfg.d));
    cfg.reset_factor = kv.get_double("classifier.reset_factor", cfg.reset_factor);
    cfg.min_window = kv.get_u64("classifier.min_window", cfg.min_window);
    cfg.max_slope_pairs = kv.get_u64("classifier.max_slope_pairs", cfg.max_slope_pairs);
    return cfg;
}

HierarchyConfig hierarchy_config(const KeyValueConfig& kv) {
    HierarchyConfig cfg;
    cfg.line_size = static_cast<uint32_t>(kv.get_u64("sim.line_size", cfg.line_size));
    cfg.l1.capacity = kv.get_u64("sim.l1.capacity", cfg.l1.capacity);
    cfg.l1.associativity = static_cast<uint32_t>(kv.get_u64("sim.l1.assoc", cfg.l1.associativity));
    cfg.l1.latency = static_cast<uint32_t>(kv.get_u64("sim.l1.latency", cfg.l1.latency));
    cfg.l2.capacity = kv.get_u64("sim.l2.capacity", cfg.l2.capacity);
    cfg.l2.associativity = static_cast<uint32_t>(kv.get_u64("sim.l2.assoc", cfg.l2.associativity));
    cfg.l2.latency = static_cast<uint32_t>(kv.get_u64("sim.l2.latency", cfg.l2.latency));
    cfg.l3.capacity = kv.get_u64("sim.l3.capacity", cfg.l3.capacity);
    cfg.l3.associativity = static_cast<uint32_t>(kv.get_u64("sim.l3.assoc", cfg.l3.associativity));
    cfg.l3.latency = static_cast<uint32_t>(kv.get_u64("sim.l3.latency", cfg.l3.latency));
    cfg.mem_latency = static_cast<uint32_t>(kv.get_u64("sim.mem_latency", cfg.mem_latency));
    cfg.mshr = static_cast<uint32_t>(kv.get_u64("sim.mshr", cfg.mshr));
    cfg.prefetch_enabled = kv.get_bool("sim.prefetch_enabled", cfg.prefetch_enabled);
    cfg.prefetch_degree =
        static_cast<uint32_t>(kv.get_u64("sim.prefetch_degree", cfg.prefetch_degree));
    cfg.prefetch_trigger_d = kv.get_u64("sim.prefetch_trigger_d", cfg.prefetch_trigger_d);
    cfg.fully_associative = kv.get_bool("sim.fully_associative", cfg.fully_associative);
    return cfg;
}

PtMapConfig ptmap_config(const KeyValueConfig& kv) {
    PtMapConfig cfg;
    cfg.beta = kv.get_double("ptmap.beta", cfg.beta);
    cfg.epsilon = kv.get_double("ptmap.epsilon", cfg.epsilon);
    return cfg;
}

OpMode parse_op_mode(const std::string& s) {
    if (s == "read" || s == "r") return OpMode::Read;
    if (s == "write" || s == "w") return OpMode::Write;
    if (s == "rmw") return OpMode::Rmw;
    throw ParamError("op mode must be read|write|rmw, got '" + s + "'");
}

// GenSpec from config-file keys under `prefix` (e.g. "gen." or "seg1.").
GenSpec spec_from_config(const KeyValueConfig& kv, const std::string& prefix) {
    if (!kv.has(prefix + "pattern"))
        throw ParamError("config is missing " + prefix + "pattern");
    GenSpec s = default_spec(parse_pattern_label(kv.get(prefix + "pattern", "")));
    s.base_addr = kv.get_u64(prefix + "base_addr", s.base_addr);
    s.stride = kv.get_u64(prefix + "stride", s.stride);
    s.period = kv.get_u64(prefix + "period", s.period);
    s.n_outer = kv.get_u64(prefix + "n_outer", s.n_outer);
    s.footprint = kv.get_u64(prefix + "footprint", s.footprint);
    s.elem_count = kv.get_u64(prefix + "elem_count", s.elem_count);
    s.seed = kv.get_u64(prefix + "seed", s.seed);
    s.access_size = static_cast<uint32_t>(kv.get_u64(prefix + "access_size", s.access_size));
    if (kv.has(prefix + "op")) s.op_mode = parse_op_mode(kv.get(prefix + "op", "read"));
    return s;
}

// ----- gen -----

struct GenCli {
    GlobalOpts g;
    std::string pattern;
    std::optional<uint64_t> base_addr, stride, period, n_outer, footprint, elem_count, count,
        access_size;
    std::string op;
    std::optional<uint64_t> total; // mix mode
};

void run_gen(const GenCli& cli) {
    const KeyValueConfig kv = cli.g.config();

    Trace trace;
    if (kv.has("seg1.pattern")) {
        // mix described in the config file: seg1.*, seg2.*, ... with fractions
        std::vector<std::pair<GenSpec, double>> parts;
        for (int i = 1;; ++i) {
            const std::string prefix = "seg" + std::to_string(i) + ".";
            if (!kv.has(prefix + "pattern")) break;
            GenSpec s = spec_from_config(kv, prefix);
            if (cli.g.seed) s.seed = *cli.g.seed + static_cast<uint64_t>(i);
            const double frac = kv.get_double(prefix + "fraction", -1.0);
            if (frac < 0) throw ParamError("config is missing " + prefix + "fraction");
            parts.emplace_back(s, frac);
        }
        const uint64_t total = cli.total ? *cli.total : kv.get_u64("total", 100000);
        trace = generate_mix(parts, total);
    } else {
        GenSpec s;
        if (kv.has("gen.pattern")) {
            s = spec_from_config(kv, "gen.");
            if (!cli.pattern.empty()) s.pattern = parse_pattern_label(cli.pattern);
        } else {
            if (cli.pattern.empty())
                throw ParamError("gen needs --pattern or a config with gen.pattern/seg1.pattern");
            s = default_spec(parse_pattern_label(cli.pattern));
        }
        if (cli.base_addr) s.base_addr = *cli.base_addr;
        if (cli.stride) s.stride = *cli.stride;
        if (cli.period) s.period = *cli.period;
        if (cli.n_outer) s.n_outer = *cli.n_outer;
        if (cli.footprint) s.footprint = *cli.footprint;
        if (cli.elem_count) s.elem_count = *cli.elem_count;
        if (cli.access_size) s.access_size = static_cast<uint32_t>(*cli.access_size);
        if (!cli.op.empty()) s.op_mode = parse_op_mode(cli.op);
        if (cli.g.seed) s.seed = *cli.g.seed;
        trace = cli.count ? generate_n(s, *cli.count) : generate(s);
    }

    if (cli.g.out.empty()) {
        write_trace(trace, std::cout, cli.g.trace_format());
    } else {
        write_trace_file(trace, cli.g.out, cli.g.trace_format());
    }
}

// ----- remaining subcommands -----

void run_classify(const GlobalOpts& g, const std::string& trace_path, uint64_t window_len) {
    const Trace t = read_trace_checked(trace_path);
    const ClassifierConfig cfg = classifier_config(g.config());
    write_output(g, classify_report_csv(t, cfg, window_len));
}

void run_simulate(const GlobalOpts& g, const std::string& trace_path) {
    const Trace t = read_trace_checked(trace_path);
    const HierarchyConfig cfg = hierarchy_config(g.config());
    write_output(g, counters_to_csv(simulate(t, cfg)));
}

void run_metrics(const GlobalOpts& g, const std::string& counters_path,
                 const std::string& trace_path, bool demand_only) {
    SimCounters counters;
    if (!trace_path.empty()) {
        counters = simulate(read_trace_checked(trace_path), hierarchy_config(g.config()));
    } else if (!counters_path.empty()) {
        std::ifstream in(counters_path);
        if (!in) throw FormatError("cannot open: " + counters_path);
        counters = counters_from_csv(in);
    } else {
        throw ParamError("metrics needs a counters CSV or --trace");
    }
    write_output(g, metrics_to_csv(derive_metrics(counters, {demand_only})));
}

void run_ptmap(const GlobalOpts& g, const std::string& points_path, size_t curve_points) {
    std::ifstream in(points_path);
    if (!in) throw FormatError("cannot open: " + points_path);
    const PtMapConfig cfg = ptmap_config(g.config());
    const auto points = points_from_csv(in, cfg);
    const auto centers = suite_centers(points, cfg);
    const auto order = order_suites(centers, cfg);

    double lo = points[0].l3_apc, hi = points[0].l3_apc;
    for (const auto& p : points) {
        lo = std::min(lo, p.l3_apc);
        hi = std::max(hi, p.l3_apc);
    }
    lo /= 3.16; // half a decade of slack on each side
    hi *= 3.16;
    std::vector<std::pair<double, std::vector<std::pair<double, double>>>> curves;
    for (const auto& suite : order) {
        const double level = energy_level(centers.at(suite), cfg);
        curves.emplace_back(level, indifference_curve_points(level, lo, hi, curve_points, cfg));
    }

    if (g.out.empty()) {
        std::cout << centers_to_csv(centers, cfg) << "\n"
                  << order_to_text(order) << "\n"
                  << curves_to_csv(curves);
    } else {
        write_file(g.out + ".centers.csv", centers_to_csv(centers, cfg));
        write_file(g.out + ".order.txt", order_to_text(order));
        write_file(g.out + ".curves.csv", curves_to_csv(curves));
        RenderSpec spec;
        spec.log_x = spec.log_y = true;
        spec.title = "memory access pattern map";
        write_file(g.out + ".svg", render_ptmap(points, centers, curves, spec));
    }
}

void run_advise(const GlobalOpts& g, const std::string& mix_path, bool text) {
    std::ifstream in(mix_path);
    if (!in) throw FormatError("cannot open: " + mix_path);
    PatternMix mix = mix_from_csv(in);
    Advice advice = recommend(mix);
    if (g.out.empty()) {
        std::cout << (text ? advice_to_text(mix, advice) : advice_to_csv(mix, advice));
    } else {
        write_file(g.out, advice_to_csv(mix, advice));
        std::cout << advice_to_text(mix, advice);
    }
}

void run_report(const GlobalOpts& g, const std::string& trace_path,
                const std::string& profile_path, const std::string& points_path,
                uint64_t window_len) {
    if (g.out.empty()) throw ParamError("report needs --out <prefix>");
    if (trace_path.empty() && profile_path.empty() && points_path.empty())
        throw ParamError("report needs at least one of --trace, --profile, --points");
    const KeyValueConfig kv = g.config();

    if (!trace_path.empty()) {
        const Trace t = read_trace_checked(trace_path);
        const ClassifierConfig ccfg = classifier_config(kv);
        const HierarchyConfig hcfg = hierarchy_config(kv);

        RenderSpec spec;
        // basename only: full paths would make otherwise-identical runs differ
        spec.title = fs::path(trace_path).filename().string();
        write_file(g.out + ".figure.svg", render_pattern_figure(t, spec));
        write_file(g.out + ".classify.csv", classify_report_csv(t, ccfg, window_len));
        const SimCounters counters = simulate(t, hcfg);
        write_file(g.out + ".counters.csv", counters_to_csv(counters));
        write_file(g.out + ".metrics.csv", metrics_to_csv(derive_metrics(counters)));
        const PatternMix mix = decompose_trace(t, ccfg, window_len == 0 ? t.size() : window_len);
        write_file(g.out + ".advice.csv", advice_to_csv(mix, recommend(mix)));
    }
    if (!profile_path.empty()) {
        const ProgramProfile profile = read_profile_file(profile_path);
        write_file(g.out + ".hotspots.csv", hotspots_to_csv(select_hotspots(profile)));
    }
    if (!points_path.empty()) {
        GlobalOpts sub = g;
        sub.out = g.out + ".ptmap";
        run_ptmap(sub, points_path, 64);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"memory access pattern toolkit: synthetic traces, pattern classification,\n"
                 "cache-hierarchy simulation, locality metrics and the pattern map"};
    app.require_subcommand(1);

    GenCli gen_cli;
    auto* gen = app.add_subcommand("gen", "generate a synthetic trace");
    add_global_opts(gen, gen_cli.g);
    gen->add_option("--pattern", gen_cli.pattern, "base pattern P1..P6");
    gen->add_option("--base-addr", gen_cli.base_addr, "base address in bytes");
    gen->add_option("--stride", gen_cli.stride, "element stride in bytes");
    gen->add_option("--period", gen_cli.period, "accesses per repetition (P2/P6)");
    gen->add_option("--n-outer", gen_cli.n_outer, "repetition count / P5 bound");
    gen->add_option("--footprint", gen_cli.footprint, "P4 address range in bytes");
    gen->add_option("--elem-count", gen_cli.elem_count, "P5 triangular bound");
    gen->add_option("--access-size", gen_cli.access_size, "bytes per access");
    gen->add_option("--op", gen_cli.op, "op mode: read|write|rmw");
    gen->add_option("--count", gen_cli.count, "exact record count");
    gen->add_option("--total", gen_cli.total, "total records for config-file mixes");

    GlobalOpts classify_g;
    std::string classify_trace;
    uint64_t classify_window = 4096;
    auto* classify = app.add_subcommand("classify", "classify trace windows into P1..P6");
    add_global_opts(classify, classify_g);
    classify->add_option("trace", classify_trace, "trace file (text or binary)")->required();
    classify->add_option("--window-len", classify_window, "records per window; 0 = whole trace");

    GlobalOpts sim_g;
    std::string sim_trace;
    auto* sim = app.add_subcommand("simulate", "run the cache hierarchy on a trace");
    add_global_opts(sim, sim_g);
    sim->add_option("trace", sim_trace, "trace file (text or binary)")->required();

    GlobalOpts met_g;
    std::string met_counters, met_trace;
    bool met_demand_only = false;
    auto* met = app.add_subcommand("metrics", "derive the metric suite from counters");
    add_global_opts(met, met_g);
    met->add_option("counters", met_counters, "counters CSV from `simulate`");
    met->add_option("--trace", met_trace, "simulate this trace inline instead");
    met->add_flag("--prefetch-ratio-demand-only", met_demand_only,
                  "divide L2 prefetches by demand requests only");

    GlobalOpts pt_g;
    std::string pt_points;
    uint64_t pt_curve_points = 64;
    auto* pt = app.add_subcommand("ptmap", "build the pattern map from points");
    add_global_opts(pt, pt_g);
    pt->add_option("points", pt_points, "CSV of label,suite,l3_apc,ral")->required();
    pt->add_option("--curve-points", pt_curve_points, "samples per indifference curve");

    GlobalOpts adv_g;
    std::string adv_mix;
    bool adv_text = false;
    auto* adv = app.add_subcommand("advise", "map a pattern mix to policy recommendations");
    add_global_opts(adv, adv_g);
    adv->add_option("mix", adv_mix, "mix CSV (pattern,weight rows or a classify report)")
        ->required();
    adv->add_flag("--text", adv_text, "print the human-readable table to stdout");

    GlobalOpts rep_g;
    std::string rep_trace, rep_profile, rep_points;
    uint64_t rep_window = 4096;
    auto* rep = app.add_subcommand("report", "run the whole pipeline and write artifacts");
    add_global_opts(rep, rep_g);
    rep->add_option("--trace", rep_trace, "trace file to analyze");
    rep->add_option("--profile", rep_profile, "profile file for hotspot selection");
    rep->add_option("--points", rep_points, "points CSV for the pattern map");
    rep->add_option("--window-len", rep_window, "records per classification window");

    try {
        app.parse(argc, argv);
        if (*gen) run_gen(gen_cli);
        if (*classify) run_classify(classify_g, classify_trace, classify_window);
        if (*sim) run_simulate(sim_g, sim_trace);
        if (*met) run_metrics(met_g, met_counters, met_trace, met_demand_only);
        if (*pt) run_ptmap(pt_g, pt_points, pt_curve_points);
        if (*adv) run_advise(adv_g, adv_mix, adv_text);
        if (*rep) run_report(rep_g, rep_trace, rep_profile, rep_points, rep_window);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: parameter: " << e.what() << "\n";
        return 2;
    } catch (const ParamError& e) {
        std::cerr << "error: parameter: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: input-format: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
