// nlturbo: design, audit and simulate nonlinear turbo codes on asymmetric
// and broadcast channels.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "nlturbo/codefile.hpp"
#include "nlturbo/designer.hpp"
#include "nlturbo/sim.hpp"

using nlohmann::json;
using namespace nlturbo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

json rational_json(const Rational& r) {
    return json{{"fraction", r.str()}, {"value", r.value()}};
}

json tally_json(const BerTally& tally) {
    const WilsonInterval ber = tally.ber_interval();
    const WilsonInterval fer = tally.fer_interval();
    return json{{"info_bits", tally.info_bits},
                {"bit_errors", tally.bit_errors},
                {"ber", tally.ber()},
                {"ber_wilson", {ber.lo, ber.hi}},
                {"frames", tally.frames},
                {"frame_errors", tally.frame_errors},
                {"fer", tally.fer()},
                {"fer_wilson", {fer.lo, fer.hi}}};
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << body;
}

std::string csv_number(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.10g", v);
    return buffer;
}

DecoderConfig decoder_from(int iterations, bool max_log) {
    DecoderConfig config;
    config.max_iterations = iterations;
    config.algorithm =
        max_log ? DecoderConfig::Algorithm::max_log_map : DecoderConfig::Algorithm::log_map;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlinear turbo codes with a target ones density"};
    app.require_subcommand(1);

    // ---- capacity ----------------------------------------------------
    std::string cap_channel = "z";
    double cap_p = 0.1;
    auto* cmd_capacity = app.add_subcommand("capacity", "channel capacity calculators");
    cmd_capacity->add_option("--channel", cap_channel, "z or bsc")->default_val("z");
    cmd_capacity->add_option("--p", cap_p, "crossover probability")->required();

    // ---- region -------------------------------------------------------
    double reg_alpha = 0.0, reg_beta = 0.1, reg_p1 = -1.0;
    int reg_points = 101;
    std::string reg_out;
    auto* cmd_region = app.add_subcommand("region", "BBSC rate region sweep (CSV)");
    cmd_region->add_option("--alpha", reg_alpha)->required();
    cmd_region->add_option("--beta", reg_beta)->required();
    cmd_region->add_option("--p1", reg_p1, "single density instead of a sweep");
    cmd_region->add_option("--points", reg_points, "sweep grid size");
    cmd_region->add_option("--out", reg_out, "CSV output path (default stdout)");

    // ---- design -------------------------------------------------------
    DesignParams design_params;
    int design_states = 16, design_k = 2;
    std::string design_metric = "z", design_topology, design_out, design_report;
    bool design_nonsystematic = false;
    auto* cmd_design = app.add_subcommand("design", "run the trellis design scheme");
    cmd_design->add_option("--density", design_params.target_ones_density, "target ones density u1")
        ->required();
    cmd_design->add_option("--states", design_states)->default_val(16);
    cmd_design->add_option("--k", design_k)->default_val(2);
    cmd_design->add_option("--n", design_params.n, "output bits per transition")->required();
    cmd_design->add_option("--metric", design_metric, "hamming | directional | z");
    cmd_design->add_option("--db", design_params.branch_floor, "branch distance floor (strict)")
        ->required();
    cmd_design->add_option("--dm", design_params.merge_floor, "merge distance floor")->required();
    cmd_design->add_option("--candidates", design_params.num_candidates)->default_val(8);
    cmd_design->add_option("--seed", design_params.rng_seed)->default_val(1);
    cmd_design->add_option("--retries", design_params.max_merge_retries)->default_val(1000);
    cmd_design->add_option("--topology", design_topology, "code file supplying the topology");
    cmd_design->add_flag("--nonsystematic", design_nonsystematic,
                         "rank candidates without systematic bits");
    cmd_design->add_option("--out", design_out, "code definition output path")->required();
    cmd_design->add_option("--report", design_report, "JSON design report path");

    // ---- audit --------------------------------------------------------
    std::string audit_file, audit_metric;
    auto* cmd_audit = app.add_subcommand("audit", "recompute distances and density of a code file");
    cmd_audit->add_option("codefile", audit_file)->required();
    cmd_audit->add_option("--metric", audit_metric, "override the file's metric");

    // ---- density ------------------------------------------------------
    std::string density_file;
    int density_blocks = 32;
    uint64_t density_seed = 1;
    auto* cmd_density = app.add_subcommand("density", "Monte Carlo codeword ones density");
    cmd_density->add_option("--code", density_file)->required();
    cmd_density->add_option("--blocks", density_blocks)->default_val(32);
    cmd_density->add_option("--seed", density_seed)->default_val(1);

    // ---- z-sim ----------------------------------------------------------
    std::string zsim_file, zsim_csv, zsim_json;
    std::vector<double> zsim_ps;
    int zsim_blocks = 100, zsim_iters = 10;
    long zsim_target_errors = 100;
    uint64_t zsim_seed = 1;
    bool zsim_max_log = false, zsim_full = false;
    auto* cmd_zsim = app.add_subcommand("z-sim", "Monte Carlo BER sweep on the Z channel");
    cmd_zsim->add_option("--code", zsim_file)->required();
    cmd_zsim->add_option("--p", zsim_ps, "crossover probabilities")->required()->expected(-1);
    cmd_zsim->add_option("--blocks", zsim_blocks, "block budget per point")->default_val(100);
    cmd_zsim->add_option("--target-errors", zsim_target_errors, "stop early at this many bit errors")
        ->default_val(100);
    cmd_zsim->add_option("--seed", zsim_seed)->default_val(1);
    cmd_zsim->add_option("--iters", zsim_iters)->default_val(10);
    cmd_zsim->add_flag("--max-log", zsim_max_log, "use max-log-MAP");
    cmd_zsim->add_flag("--full", zsim_full,
                       "reference-scale runs: no early stop, no pass/fail bound");
    cmd_zsim->add_option("--csv", zsim_csv, "CSV output path (default stdout)");
    cmd_zsim->add_option("--json", zsim_json, "JSON report path");

    // ---- bbsc-sim -------------------------------------------------------
    std::string bbsc_spec1, bbsc_spec2, bbsc_out;
    double bbsc_alpha = 0.0, bbsc_beta = 0.0, bbsc_p1 = -1.0;
    int bbsc_blocks = 100, bbsc_iters = 10;
    uint64_t bbsc_seed = 1;
    bool bbsc_no_genie = false;
    auto* cmd_bbsc = app.add_subcommand("bbsc-sim", "two-user superposition pipeline simulation");
    cmd_bbsc->add_option("--alpha", bbsc_alpha)->required();
    cmd_bbsc->add_option("--beta", bbsc_beta)->required();
    cmd_bbsc->add_option("--spec1", bbsc_spec1, "user-1 code file (density p1)")->required();
    cmd_bbsc->add_option("--spec2", bbsc_spec2, "user-2 code file (density 0.5)")->required();
    cmd_bbsc->add_option("--p1", bbsc_p1, "user-1 ones density (default: user-1 table density)");
    cmd_bbsc->add_option("--blocks", bbsc_blocks)->default_val(100);
    cmd_bbsc->add_option("--seed", bbsc_seed)->default_val(1);
    cmd_bbsc->add_option("--iters", bbsc_iters)->default_val(10);
    cmd_bbsc->add_flag("--no-genie", bbsc_no_genie, "skip the genie-aided diagnostic decode");
    cmd_bbsc->add_option("--out", bbsc_out, "JSON report path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_capacity->parsed()) {
            json out;
            if (cap_channel == "z") {
                out = json{{"channel", "z"},
                           {"p", cap_p},
                           {"capacity_bits", z_capacity(cap_p)},
                           {"optimal_zeros_density", z_optimal_zeros_density(cap_p)},
                           {"optimal_ones_density", 1.0 - z_optimal_zeros_density(cap_p)}};
            } else if (cap_channel == "bsc") {
                out = json{{"channel", "bsc"},
                           {"p", cap_p},
                           {"capacity_bits", 1.0 - binary_entropy(cap_p)}};
            } else {
                std::cerr << "unknown channel '" << cap_channel << "'\n";
                return kExitUsage;
            }
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_region->parsed()) {
            std::string csv = "p1,R1,R2\n";
            if (reg_p1 >= 0.0) {
                const RatePoint pt = bbsc_region(reg_alpha, reg_beta, reg_p1);
                csv += csv_number(pt.p1) + "," + csv_number(pt.r1) + "," + csv_number(pt.r2) + "\n";
            } else {
                for (int g = 0; g < reg_points; ++g) {
                    const double p1 = 0.5 * g / (reg_points - 1);
                    const RatePoint pt = bbsc_region(reg_alpha, reg_beta, p1);
                    csv += csv_number(pt.p1) + "," + csv_number(pt.r1) + "," + csv_number(pt.r2) +
                           "\n";
                }
            }
            if (reg_out.empty())
                std::cout << csv;
            else
                write_text(reg_out, csv);
            return kExitOk;
        }

        if (cmd_design->parsed()) {
            design_params.metric = metric_from_string(design_metric);
            design_params.rank_systematic = !design_nonsystematic;
            TrellisTopology topology = design_topology.empty()
                                           ? default_topology_16()
                                           : topology_from(load_code_file(design_topology));
            if (topology.num_states() != design_states || topology.k() != design_k) {
                std::cerr << "topology file disagrees with --states/--k\n";
                return kExitValidation;
            }
            const DesignResult result = design_trellis(design_params, topology);
            CodeFileData data = describe_code(result.trellis, design_params.metric);
            save_code_file(design_out, data);

            json report{{"density",
                         {{"target", design_params.target_ones_density},
                          {"ones_per_subtable", result.ones_per_subtable},
                          {"achieved", result.achieved_density}}},
                        {"metric", to_string(design_params.metric)},
                        {"branch_floor", design_params.branch_floor},
                        {"merge_floor", design_params.merge_floor},
                        {"branch_distance", result.branch_distance},
                        {"merge_distance", result.merge_distance},
                        {"effective_free_distance",
                         {{"value", result.effective_free_distance.value},
                          {"merged", result.effective_free_distance.merged}}},
                        {"seed_trace",
                         {{"rng_seed", result.seed_trace.rng_seed},
                          {"design_m1_calls", result.seed_trace.design_m1_calls},
                          {"chosen_candidate", result.seed_trace.chosen_candidate},
                          {"retries_per_candidate", result.seed_trace.retries_per_candidate}}},
                        {"code_file", design_out}};
            const std::string report_path =
                design_report.empty() ? design_out + ".report.json" : design_report;
            write_text(report_path, report.dump(2) + "\n");
            std::cout << report.dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_audit->parsed()) {
            CodeFileData data;
            try {
                data = load_code_file(audit_file);
            } catch (const parse_error& e) {
                std::cerr << audit_file << ": " << e.what() << "\n";
                return kExitValidation;
            }
            const DistanceMetric metric = !audit_metric.empty()
                                              ? metric_from_string(audit_metric)
                                              : data.metric.value_or(DistanceMetric::z);
            AuditResult result;
            try {
                result = audit_code(data, metric);
            } catch (const std::invalid_argument& e) {
                std::cerr << audit_file << ": " << e.what() << "\n";
                return kExitValidation;
            }
            json out{{"file", audit_file},
                     {"metric", to_string(metric)},
                     {"branch_distance", result.report.branch_distance},
                     {"merge_distance", result.report.merge_distance},
                     {"per_state_branch", result.report.per_state_branch},
                     {"per_state_merge", result.report.per_state_merge},
                     {"effective_free_distance",
                      {{"value", result.free_distance.value}, {"merged", result.free_distance.merged}}},
                     {"table_density", result.table_density},
                     {"mismatches", result.mismatches}};
            if (result.rate) out["rate"] = rational_json(*result.rate);
            std::cout << out.dump(2) << "\n";
            if (!result.mismatches.empty()) {
                std::cerr << "audit: declared values disagree with recomputation\n";
                return kExitValidation;
            }
            return kExitOk;
        }

        if (cmd_density->parsed()) {
            const CodeSpec spec = code_spec_from(load_code_file(density_file));
            const DensityEstimate estimate = measure_ones_density(spec, density_blocks, density_seed);
            json out{{"code", density_file},
                     {"rate", rational_json(spec.rate())},
                     {"blocks", density_blocks},
                     {"seed", density_seed},
                     {"total_bits", estimate.total_bits},
                     {"ones_density", estimate.density},
                     {"std_error", estimate.std_error}};
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_zsim->parsed()) {
            const CodeSpec spec = code_spec_from(load_code_file(zsim_file));
            MonteCarloConfig config;
            config.max_blocks = zsim_blocks;
            config.target_bit_errors = zsim_full ? 0 : zsim_target_errors;
            config.seed = zsim_seed;
            config.decoder = decoder_from(zsim_iters, zsim_max_log);

            const DensityEstimate density = measure_ones_density(
                spec, std::max(1, static_cast<int>(1000000 / spec.codeword_bits()) + 1), zsim_seed);

            std::string csv =
                "p,rate,capacity,gap,density,density_stderr,info_bits,bit_errors,ber,ber_lo,"
                "ber_hi,frames,frame_errors,fer,fer_lo,fer_hi,stop_reason\n";
            json reports = json::array();
            for (double p : zsim_ps) {
                const ZSimPoint point = run_z_point(spec, p, config);
                const WilsonInterval ber = point.tally.ber_interval();
                const WilsonInterval fer = point.tally.fer_interval();
                if (point.gap < 0.0)
                    std::cerr << "note: rate " << point.rate.str() << " exceeds capacity at p=" << p
                              << " (gap " << point.gap << ")\n";
                csv += csv_number(p) + "," + point.rate.str() + "," + csv_number(point.capacity) +
                       "," + csv_number(point.gap) + "," + csv_number(density.density) + "," +
                       csv_number(density.std_error) + "," + std::to_string(point.tally.info_bits) +
                       "," + std::to_string(point.tally.bit_errors) + "," +
                       csv_number(point.tally.ber()) + "," + csv_number(ber.lo) + "," +
                       csv_number(ber.hi) + "," + std::to_string(point.tally.frames) + "," +
                       std::to_string(point.tally.frame_errors) + "," +
                       csv_number(point.tally.fer()) + "," + csv_number(fer.lo) + "," +
                       csv_number(fer.hi) + "," + point.stop_reason + "\n";
                reports.push_back(
                    json{{"config",
                          {{"code", zsim_file},
                           {"blocks", zsim_blocks},
                           {"target_bit_errors", config.target_bit_errors},
                           {"seed", zsim_seed},
                           {"iterations", zsim_iters},
                           {"algorithm", zsim_max_log ? "max-log-map" : "log-map"},
                           {"full", zsim_full}}},
                         {"channel", {{"kind", "z"}, {"p", p}}},
                         {"rate", rational_json(point.rate)},
                         {"capacity_bits", point.capacity},
                         {"gap_bits", point.gap},
                         {"ones_density", {{"value", density.density}, {"std_error", density.std_error}}},
                         {"results", tally_json(point.tally)},
                         {"stop_reason", point.stop_reason},
                         {"wall_seconds", point.seconds}});
            }
            if (zsim_csv.empty())
                std::cout << csv;
            else
                write_text(zsim_csv, csv);
            if (!zsim_json.empty()) write_text(zsim_json, reports.dump(2) + "\n");
            return kExitOk;
        }

        if (cmd_bbsc->parsed()) {
            SuperpositionSpec spec{code_spec_from(load_code_file(bbsc_spec1)),
                                   code_spec_from(load_code_file(bbsc_spec2)), bbsc_alpha,
                                   bbsc_beta, 0.0};
            spec.p1 = bbsc_p1 >= 0.0 ? bbsc_p1 : ones_density(spec.spec1.constituent);
            BbscSimConfig config;
            config.blocks = bbsc_blocks;
            config.seed = bbsc_seed;
            config.decoder = decoder_from(bbsc_iters, false);
            config.genie = !bbsc_no_genie;
            const BbscSimResult result = run_bbsc_sim(spec, config);
            json out{{"config",
                      {{"spec1", bbsc_spec1},
                       {"spec2", bbsc_spec2},
                       {"alpha", bbsc_alpha},
                       {"beta", bbsc_beta},
                       {"p1", spec.p1},
                       {"blocks", bbsc_blocks},
                       {"seed", bbsc_seed},
                       {"iterations", bbsc_iters},
                       {"genie", config.genie}}},
                     {"rate1", rational_json(result.rate1)},
                     {"rate2", rational_json(result.rate2)},
                     {"region_at_p1",
                      {{"R1", result.boundary.r1}, {"R2", result.boundary.r2}}},
                     {"user1", tally_json(result.user1)},
                     {"user2", tally_json(result.user2)},
                     {"stage1_block_failures", result.stage1_block_failures},
                     {"wall_seconds", result.seconds}};
            if (config.genie) out["user1_genie"] = tally_json(result.user1_genie);
            write_text(bbsc_out, out.dump(2) + "\n");
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
