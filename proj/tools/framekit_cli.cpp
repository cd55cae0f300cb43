// framekit: generate frames, certify their subset geometry, and emit
// machine-readable reports.  One logical command per invocation; outputs are
// byte-identical for identical (arguments, seed, input files).
//
// Exit codes: 0 pass, 1 certified-check failure, 2 usage, 3 non-convergence.

#include <complex>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <framekit/framekit.hpp>

using namespace framekit;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_no_convergence = 3;

struct GlobalOptions {
    Tolerances tol;
    SweepOptions sweep;
    std::string output_path;
    std::string format = "json";
};

unsigned thread_cap_from_env() {
    const char* raw = std::getenv("FRAMEKIT_THREADS");
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (!raw) return hw;
    const long parsed = std::strtol(raw, nullptr, 10);
    if (parsed < 1) return 1;
    return std::min<unsigned>(hw, static_cast<unsigned>(parsed));
}

void add_global_options(CLI::App* cmd, GlobalOptions& g) {
    cmd->add_option("--tol-sym", g.tol.sym, "relative symmetry residual tolerance");
    cmd->add_option("--tol-eigen", g.tol.eigen, "relative spectral residual tolerance");
    cmd->add_option("--tol-rank", g.tol.rank, "relative rank cutoff");
    cmd->add_option("--tol-iso", g.tol.iso, "isoclinic spread tolerance");
    cmd->add_option("--tol-tight", g.tol.tight, "tight-ratio tolerance");
    cmd->add_option("--budget", g.sweep.budget, "max subsets an exhaustive sweep may visit");
    cmd->add_option("-o,--output", g.output_path, "write the report/frame JSON here");
    cmd->add_option("--format", g.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

using AnyFrame = std::variant<Frame<double>, Frame<std::complex<double>>>;

AnyFrame load_frame(const std::string& path, const Tolerances& tol) {
    const Json j = load_json(path);
    if (frame_field(j) == "complex") return frame_from_json<std::complex<double>>(j, tol);
    return frame_from_json<double>(j, tol);
}

/// Report envelope: tool version, resolved configuration, input digests.
Json envelope(const Json& config, const std::vector<std::string>& input_paths, Json report) {
    Json out;
    out["tool"] = version_string;
    out["config"] = config;
    Json inputs = Json::object();
    for (const auto& p : input_paths) inputs[p] = file_digest(p);
    out["inputs"] = std::move(inputs);
    out["report"] = std::move(report);
    return out;
}

void emit(const GlobalOptions& g, const Json& payload, const std::string& csv = {}) {
    if (g.format == "csv" && !csv.empty()) {
        if (g.output_path.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(g.output_path);
            if (!out) throw IoError("cannot write " + g.output_path);
            out << csv;
        }
        return;
    }
    if (g.output_path.empty()) {
        std::cout << payload.dump(2) << '\n';
    } else {
        save_json(g.output_path, payload);
    }
}

Partition partition_from_flags(std::size_t count, const std::string& blocks,
                               std::size_t block_size) {
    if (!blocks.empty()) return Partition::parse(count, blocks);
    if (block_size > 0) return Partition::contiguous(count, block_size);
    throw InvalidPartition("a partition is required: pass --blocks or --block-size");
}

std::vector<std::size_t> parse_id_list(const std::string& text) {
    std::vector<std::size_t> ids;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!token.empty()) ids.push_back(std::stoull(token));
    return ids;
}

// -- generate -----------------------------------------------------------------

int run_generate(const std::string& kind, std::size_t dim, std::size_t count,
                 std::uint64_t seed, bool have_seed, std::size_t iters, double tight_tol,
                 const std::string& field, const GlobalOptions& g) {
    if (g.output_path.empty()) {
        std::cerr << "generate needs -o/--output for the frame file\n";
        return exit_usage;
    }

    auto finish = [&](auto&& frame) {
        save_json(g.output_path, frame_to_json(frame));
        const auto b = frame.bounds();
        std::cout << "wrote " << g.output_path << "\n"
                  << "bounds: [" << b.lower << ", " << b.upper
                  << "]  tight_ratio: " << b.tight_ratio() << "\n";
        return exit_pass;
    };

    try {
        if (kind == "orthonormal") {
            if (field == "complex")
                return finish(make_orthonormal_frame<std::complex<double>>(dim, g.tol));
            return finish(make_orthonormal_frame<double>(dim, g.tol));
        }
        if (count == 0) {
            std::cerr << "--count is required for kind '" << kind << "'\n";
            return exit_usage;
        }
        if (kind == "harmonic") {
            if (field == "complex")
                return finish(make_harmonic_frame<std::complex<double>>(dim, count, g.tol));
            return finish(make_harmonic_frame<double>(dim, count, g.tol));
        }
        if (!have_seed) {
            std::cerr << "--seed is mandatory for randomized generation\n";
            return exit_usage;
        }
        if (field == "complex")
            return finish(make_random_unit_tight_frame<std::complex<double>>(
                dim, count, seed, iters, tight_tol, g.tol));
        return finish(
            make_random_unit_tight_frame<double>(dim, count, seed, iters, tight_tol, g.tol));
    } catch (const DidNotConverge& e) {
        std::cerr << "did not converge: " << e.what() << "\n";
        return exit_no_convergence;
    }
}

// -- rip ----------------------------------------------------------------------

std::string rip_csv(const RipReport& r) {
    std::ostringstream out;
    out << "s,epsilon_hat,delta_equivalent,witness,method,subsets_checked\n";
    out << r.s << ',' << r.epsilon_hat << ',' << r.witness_bounds.delta_equivalent() << ',';
    for (std::size_t i = 0; i < r.witness.size(); ++i) out << (i ? "|" : "") << r.witness[i];
    out << ',' << (r.method.kind == RipMethod::Kind::exhaustive ? "exhaustive" : "randomized")
        << ',' << r.subsets_checked << '\n';
    return out.str();
}

int run_rip(const std::string& frame_path, std::size_t s, const std::string& method,
            std::size_t samples, std::uint64_t seed, bool have_seed, const GlobalOptions& g) {
    const AnyFrame any = load_frame(frame_path, g.tol);
    Json config{{"command", "rip"},
                {"frame", frame_path},
                {"s", s},
                {"method", method},
                {"budget", g.sweep.budget},
                {"threads", g.sweep.threads}};
    RipReport report = std::visit(
        [&](const auto& f) {
            if (method == "randomized") {
                if (!have_seed)
                    throw InvalidPartition("--seed is mandatory for randomized sweeps");
                config["samples"] = samples;
                config["seed"] = seed;
                return rip_randomized(f, s, samples, seed);
            }
            return rip_exhaustive(f, s, g.sweep);
        },
        any);
    emit(g, envelope(config, {frame_path}, rip_report_to_json(report)), rip_csv(report));
    return exit_pass;
}

// -- fusion ---------------------------------------------------------------------

int run_fusion(const std::string& frame_path, const std::string& blocks, std::size_t block_size,
               const std::string& rip_path, std::size_t s_inline, const std::string& fusion_out,
               const GlobalOptions& g) {
    const AnyFrame any = load_frame(frame_path, g.tol);
    Json config{{"command", "fusion"},
                {"frame", frame_path},
                {"blocks", blocks},
                {"block_size", block_size}};
    std::vector<std::string> inputs = {frame_path};

    int exit_code = exit_pass;
    Json body = std::visit(
        [&](const auto& f) {
            const Partition partition = partition_from_flags(f.count(), blocks, block_size);
            RipReport rip;
            if (!rip_path.empty()) {
                rip = rip_report_from_json(load_json(rip_path).at("report"));
                inputs.push_back(rip_path);
                config["rip"] = rip_path;
            } else {
                const std::size_t s = s_inline > 0 ? s_inline : partition.max_block_size();
                config["s"] = s;
                rip = rip_exhaustive(f, s, g.sweep);
            }
            auto ff = fusion_frame_from_partition(f, partition);
            if (!fusion_out.empty()) save_json(fusion_out, fusion_frame_to_json(ff));
            const auto report = certify_near_tightness(f, partition, rip);
            if (!report.holds) exit_code = exit_check_failed;
            return near_tightness_to_json(report);
        },
        any);

    std::ostringstream csv;
    csv << "epsilon,theoretical_lower,theoretical_upper,measured_lower,measured_upper,holds\n"
        << body["epsilon"].get<double>() << ',' << body["theoretical"]["lower"].get<double>()
        << ',' << body["theoretical"]["upper"].get<double>() << ','
        << body["measured"]["lower"].get<double>() << ','
        << body["measured"]["upper"].get<double>() << ','
        << (body["holds"].get<bool>() ? "true" : "false") << '\n';
    emit(g, envelope(config, inputs, body), csv.str());
    return exit_code;
}

// -- angles ---------------------------------------------------------------------

template <typename Scalar>
Json angles_from_fusion(const FusionFrame<Scalar>& ff, std::optional<double> probe,
                        const Tolerances& tol) {
    Json body = angle_report_to_json(ff.subspaces(), tol);
    bool equal_dims = true;
    for (const auto& s : ff.subspaces())
        if (s.dim() != ff.subspaces().front().dim()) equal_dims = false;
    if (equal_dims && ff.size() >= 2) {
        const auto iso = certify_equi_isoclinic(ff.subspaces(), probe, tol);
        const Json iso_json = isoclinic_report_to_json(iso);
        body["lambda_star"] = iso_json["lambda_star"];
        body["epsilon_required"] = iso_json["epsilon_required"];
        if (probe) {
            body["probe_epsilon"] = *probe;
            body["holds_at_probe"] = iso.holds_at_probe;
        }
    }
    return body;
}

std::string angles_csv(const Json& body) {
    std::ostringstream out;
    out << "i,j,cosines\n";
    for (const auto& p : body["pairs"]) {
        out << p["i"].get<std::size_t>() << ',' << p["j"].get<std::size_t>() << ',';
        const auto& cos = p["cosines"];
        for (std::size_t k = 0; k < cos.size(); ++k) out << (k ? "|" : "") << cos[k].get<double>();
        out << '\n';
    }
    return out.str();
}

int run_angles(const std::string& fusion_path, const std::string& frame_path,
               const std::string& blocks, std::size_t block_size, const std::string& rip_path,
               std::optional<double> probe, const GlobalOptions& g) {
    Json config{{"command", "angles"}};
    std::vector<std::string> inputs;
    int exit_code = exit_pass;
    Json body;

    if (!fusion_path.empty()) {
        config["fusion"] = fusion_path;
        inputs.push_back(fusion_path);
        const Json j = load_json(fusion_path);
        if (j.value("field", "real") == std::string("complex")) {
            body = angles_from_fusion(fusion_frame_from_json<std::complex<double>>(j, g.tol),
                                      probe, g.tol);
        } else {
            body = angles_from_fusion(fusion_frame_from_json<double>(j, g.tol), probe, g.tol);
        }
        if (probe && body.contains("holds_at_probe") && !body["holds_at_probe"].get<bool>())
            exit_code = exit_check_failed;
    } else if (!frame_path.empty()) {
        config["frame"] = frame_path;
        config["blocks"] = blocks;
        config["block_size"] = block_size;
        inputs.push_back(frame_path);
        const AnyFrame any = load_frame(frame_path, g.tol);
        body = std::visit(
            [&](const auto& f) {
                const Partition partition = partition_from_flags(f.count(), blocks, block_size);
                if (!rip_path.empty()) {
                    // full certificate: near-tightness plus pairwise orthogonality
                    inputs.push_back(rip_path);
                    config["rip"] = rip_path;
                    const RipReport rip =
                        rip_report_from_json(load_json(rip_path).at("report"));
                    const auto combined = certify_near_orthogonality(f, partition, rip);
                    if (!combined.holds) exit_code = exit_check_failed;
                    Json out = near_orthogonality_to_json(combined);
                    const auto ff = fusion_frame_from_partition(f, partition);
                    out["pairs"] = angle_report_to_json(ff.subspaces(), g.tol)["pairs"];
                    return out;
                }
                const auto ff = fusion_frame_from_partition(f, partition);
                return angles_from_fusion(ff, probe, g.tol);
            },
            any);
    } else {
        std::cerr << "angles needs --fusion or --frame\n";
        return exit_usage;
    }
    emit(g, envelope(config, inputs, body), angles_csv(body));
    return exit_code;
}

// -- replace -----------------------------------------------------------------------

int run_replace(const std::string& frame_path, const std::string& blocks, std::size_t block_size,
                std::size_t replace_first, const std::string& replace_ids, std::size_t s,
                const std::string& rip_path, const std::string& frame_out,
                const GlobalOptions& g) {
    const AnyFrame any = load_frame(frame_path, g.tol);
    Json config{{"command", "replace"},
                {"frame", frame_path},
                {"blocks", blocks},
                {"block_size", block_size},
                {"s", s}};
    std::vector<std::string> inputs = {frame_path};

    int exit_code = exit_pass;
    Json body = std::visit(
        [&](const auto& f) {
            const Partition partition = partition_from_flags(f.count(), blocks, block_size);
            std::vector<std::size_t> ids;
            if (!replace_ids.empty()) {
                ids = parse_id_list(replace_ids);
                config["replace_ids"] = replace_ids;
            } else {
                for (std::size_t i = 0; i < replace_first; ++i) ids.push_back(i);
                config["replace_first"] = replace_first;
            }
            RipReport rip;
            if (!rip_path.empty()) {
                rip = rip_report_from_json(load_json(rip_path).at("report"));
                inputs.push_back(rip_path);
                config["rip"] = rip_path;
            } else {
                rip = rip_exhaustive(f, s, g.sweep);
            }
            const auto rf = replace_blocks(f, partition, ids);
            if (!frame_out.empty()) save_json(frame_out, frame_to_json(rf.frame));
            const auto report = certify_replacement(rf, s, rip, g.sweep);
            if (report.holds.has_value() && !*report.holds) exit_code = exit_check_failed;
            return replacement_report_to_json(report);
        },
        any);

    std::ostringstream csv;
    csv << "replaced_count,epsilon,theoretical_lower,theoretical_upper,measured_lower,"
           "measured_upper,holds\n"
        << body["replaced_count"].get<std::size_t>() << ',' << body["epsilon"].get<double>()
        << ',' << body["theoretical_lower"].get<double>() << ','
        << body["theoretical_upper"].get<double>() << ',' << body["measured_lower"].get<double>()
        << ',' << body["measured_upper"].get<double>() << ','
        << (body["holds"].is_null() ? "n/a" : (body["holds"].get<bool>() ? "true" : "false"))
        << '\n';
    emit(g, envelope(config, inputs, body), csv.str());
    return exit_code;
}

// -- verify-all ----------------------------------------------------------------------

struct VerifyClause {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Condensed end-to-end run of every certified bracket on seeded inputs.
/// force_epsilon substitutes a wrong constant into the brackets to expose
/// the failure path.
std::vector<VerifyClause> verify_all(std::uint64_t seed, std::size_t instances,
                                     std::optional<double> force_epsilon, const Tolerances& tol,
                                     const SweepOptions& sweep) {
    std::vector<VerifyClause> clauses;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        clauses.push_back({name, pass, detail});
    };

    auto perturbed = [&](std::size_t n, double delta, std::uint64_t rng_seed) {
        Rng rng(rng_seed);
        Matrix<double> v = Matrix<double>::identity(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) v(i, j) += delta * rng.normal();
        for (std::size_t j = 0; j < n; ++j) {
            auto c = v.col(j);
            scale_in_place<double>(c, 1.0 / norm<double>(c));
        }
        return Frame<double>::from_columns(std::move(v), tol);
    };

    {  // trivial exactness on an orthonormal basis
        auto f = make_orthonormal_frame<double>(6, tol);
        auto rip = rip_exhaustive(f, 2, sweep);
        const auto nt = certify_near_tightness(f, Partition::contiguous(6, 2), rip);
        const bool pass = rip.epsilon_hat <= 1e-8 && nt.holds &&
                          std::abs(nt.measured_lower - 1.0) <= 1e-8 &&
                          std::abs(nt.measured_upper - 1.0) <= 1e-8;
        add("trivial-exactness", pass,
            "orthonormal basis: epsilon_hat=" + std::to_string(rip.epsilon_hat));
    }
    {  // near-tightness bracket on seeded tight frames
        bool pass = true;
        std::string detail;
        for (std::size_t k = 0; k < instances && pass; ++k) {
            auto f = make_random_unit_tight_frame<double>(5 + k % 3, 6 + k % 3, seed + k, 0,
                                                          1e-10, tol);
            auto rip = rip_exhaustive(f, 2, sweep);
            if (force_epsilon) rip.epsilon_hat = *force_epsilon;
            const auto nt =
                certify_near_tightness(f, Partition::contiguous(f.count(), 2), rip);
            if (!nt.holds) {
                pass = false;
                detail = "instance " + std::to_string(k) + " measured [" +
                         std::to_string(nt.measured_lower) + "," +
                         std::to_string(nt.measured_upper) + "] outside [" +
                         std::to_string(nt.theoretical_lower) + "," +
                         std::to_string(nt.theoretical_upper) + "]";
            }
        }
        add("near-tightness-bracket", pass, detail);
    }
    {  // span correlation bounds
        bool pass = true;
        std::string detail;
        for (std::size_t k = 0; k < instances && pass; ++k) {
            Rng rng(seed + 1000 + k);
            auto f = perturbed(10, 0.02, seed + 1000 + k);
            auto subset = rng.subset(10, 4);
            auto r = check_span_correlation_bound(
                f, subset, {{subset[0], subset[1]}, {subset[2], subset[3]}});
            const double sharp = force_epsilon
                                     ? 2.0 * *force_epsilon * (1.0 + *force_epsilon / 2.0)
                                     : r.bound_sharp;
            if (!(r.max_correlation <= sharp + 1e-10) || !r.holds_loose) {
                pass = false;
                detail = "instance " + std::to_string(k) + " correlation " +
                         std::to_string(r.max_correlation) + " vs bound " +
                         std::to_string(sharp);
            }
        }
        add("span-correlation-bound", pass, detail);
    }
    {  // operator power brackets
        bool pass = true;
        std::string detail;
        for (std::size_t k = 0; k < instances && pass; ++k) {
            Rng rng(seed + 2000 + k);
            auto f = Frame<double>::from_columns(rng.gaussian_matrix<double>(6, 4), tol);
            std::vector<std::size_t> all = {0, 1, 2, 3};
            const double eps = riesz_bounds(f, all).epsilon;
            if (std::isinf(eps)) continue;
            const double used = force_epsilon ? *force_epsilon : eps;
            try {
                for (const auto& pb : check_operator_power_bounds(
                         f, used, {0.5, 1.0, 2.0, -0.5, -1.0, -2.0}))
                    if (!pb.holds) {
                        pass = false;
                        detail = "exponent " + std::to_string(pb.exponent);
                    }
            } catch (const NotRieszBasis&) {
                pass = false;
                detail = "forced epsilon below the measured constant";
            }
        }
        add("operator-power-brackets", pass, detail);
    }
    {  // projection residual bound with the inverse-root map
        bool pass = true;
        std::string detail;
        for (std::size_t k = 0; k < instances && pass; ++k) {
            auto f = perturbed(8, 0.01, seed + 3000 + k);
            std::vector<std::size_t> block = {0, 1, 2, 3};
            std::vector<std::size_t> sub_block = {0, 1};
            const double eps = riesz_bounds(f, block).epsilon;
            const Matrix<double> cols = f.vectors().select_cols(block);
            const Matrix<double> inv_root =
                spectral_power(cols * cols.adjoint(), -0.5, tol.rank, tol);
            auto w1 = Subspace<double>::from_spanning(f.vectors().select_cols(sub_block), tol);
            auto w2 = Subspace<double>::from_spanning(
                inv_root * f.vectors().select_cols(sub_block), tol);
            const double hypothesis = force_epsilon ? *force_epsilon : eps / (1.0 + eps);
            try {
                auto r = check_projection_residual_bound(w1, w2, inv_root, hypothesis, 20,
                                                         seed + k, tol);
                if (!r.holds) {
                    pass = false;
                    detail = "residual " + std::to_string(r.worst_residual_sq) + " vs bound " +
                             std::to_string(r.bound);
                }
            } catch (const HypothesisViolated& e) {
                pass = false;
                detail = e.what();
            }
        }
        add("projection-residual-bound", pass, detail);
    }
    {  // replacement bracket
        bool pass = true;
        std::string detail;
        for (std::size_t k = 0; k < std::min<std::size_t>(instances, 5) && pass; ++k) {
            auto f = perturbed(12, 0.002, seed + 4000 + k);
            auto rip = rip_exhaustive(f, 3, sweep);
            if (force_epsilon) rip.epsilon_hat = *force_epsilon;
            const Partition partition = Partition::contiguous(12, 3);
            auto rf = replace_blocks(f, partition, {0, 1});
            try {
                auto r = certify_replacement(rf, 3, rip, sweep);
                if (!r.holds.has_value() || !*r.holds) {
                    pass = false;
                    detail = "measured [" + std::to_string(r.measured_lower) + "," +
                             std::to_string(r.measured_upper) + "] bracket [" +
                             std::to_string(r.theoretical_lower) + "," +
                             std::to_string(r.theoretical_upper) + "]";
                }
            } catch (const EpsilonTooLarge& e) {
                pass = false;
                detail = e.what();
            }
        }
        add("replacement-bracket", pass, detail);
    }
    {  // composition bracket
        bool pass = true;
        std::string detail;
        for (std::size_t k = 0; k < instances && pass; ++k) {
            Rng rng(seed + 5000 + k);
            auto f = Frame<double>::from_columns(rng.gaussian_matrix<double>(5, 9), tol);
            auto ff = fusion_frame_from_partition(f, Partition::contiguous(9, 3));
            std::vector<Matrix<double>> locals;
            for (const auto& sub : ff.subspaces())
                locals.push_back(sub.basis() *
                                 rng.gaussian_matrix<double>(sub.dim(), sub.dim() + 1));
            auto r = check_local_global_composition(ff, locals);
            if (!r.forward_holds || !r.reverse_holds) {
                pass = false;
                detail = "instance " + std::to_string(k);
            }
        }
        add("composition-bracket", pass, detail);
    }
    {  // reconstruction round trips
        bool pass = true;
        std::string detail;
        for (std::size_t k = 0; k < instances && pass; ++k) {
            Rng rng(seed + 6000 + k);
            auto f = Frame<double>::from_columns(rng.gaussian_matrix<double>(5, 8), tol);
            auto x = rng.unit_vector<double>(5);
            const auto frame_back = reconstruct(f, analysis_apply(f, x));
            auto ff = fusion_frame_from_partition(f, Partition::contiguous(8, 2));
            const auto fusion_back = fusion_reconstruct(ff, fusion_measure(ff, x));
            if (distance<double>(frame_back, x) > 1e-8 ||
                distance<double>(fusion_back, x) > 1e-8) {
                pass = false;
                detail = "instance " + std::to_string(k);
            }
        }
        add("reconstruction-round-trip", pass, detail);
    }
    {  // randomized/exhaustive oracle consistency
        auto f = make_harmonic_frame<double>(6, 12, tol);
        auto ex = rip_exhaustive(f, 2, sweep);
        auto rz = rip_randomized(f, 2, 66, seed);
        const bool pass = ex.epsilon_hat == rz.epsilon_hat && ex.witness == rz.witness;
        add("sweep-oracle-consistency", pass,
            pass ? "" : "full-coverage randomized sweep diverged from exhaustive");
    }
    return clauses;
}

int run_verify_all(const std::string& config_path, const GlobalOptions& g) {
    std::uint64_t seed = 1;
    std::size_t instances = 10;
    std::optional<double> force_epsilon;

    Json config{{"command", "verify-all"}};
    std::vector<std::string> inputs;
    if (!config_path.empty()) {
        const Json cfg = load_json(config_path);
        if (!cfg.is_object() || cfg.empty()) {
            std::cerr << "config must be a non-empty JSON object with any of: "
                         "seed, instances, force_epsilon\n";
            return exit_usage;
        }
        seed = cfg.value("seed", seed);
        instances = cfg.value("instances", instances);
        if (cfg.contains("force_epsilon")) force_epsilon = cfg["force_epsilon"].get<double>();
        inputs.push_back(config_path);
        config["config_file"] = config_path;
    }
    config["seed"] = seed;
    config["instances"] = instances;
    if (force_epsilon) config["force_epsilon"] = *force_epsilon;

    const auto clauses = verify_all(seed, instances, force_epsilon, g.tol, g.sweep);
    bool all_pass = true;
    Json body = Json::array();
    for (const auto& c : clauses) {
        all_pass = all_pass && c.pass;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.pass && !c.detail.empty()) std::cout << ": " << c.detail;
        std::cout << "\n";
        body.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    std::cout << (all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
    if (!g.output_path.empty()) save_json(g.output_path, envelope(config, inputs, body));
    return all_pass ? exit_pass : exit_check_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-frame certification toolkit"};
    app.require_subcommand(1);

    GlobalOptions g;
    g.sweep.threads = thread_cap_from_env();

    auto* generate =
        app.add_subcommand("generate", "construct a frame and write it to a file");
    std::string gen_kind;
    std::size_t gen_dim = 0, gen_count = 0, gen_iters = 0;
    std::uint64_t gen_seed = 0;
    double gen_tight_tol = 1e-10;
    std::string gen_field = "real";
    generate->add_option("kind", gen_kind, "harmonic | random-tight | orthonormal")
        ->required()
        ->check(CLI::IsMember({"harmonic", "random-tight", "orthonormal"}));
    generate->add_option("--dim", gen_dim, "ambient dimension")->required();
    generate->add_option("--count", gen_count, "number of vectors");
    auto* seed_opt = generate->add_option("--seed", gen_seed, "RNG seed (mandatory when random)");
    generate->add_option("--iters", gen_iters, "tightening iteration cap (0 = default)");
    generate->add_option("--tight-tol", gen_tight_tol, "tightening target tolerance");
    generate->add_option("--field", gen_field, "real | complex")
        ->check(CLI::IsMember({"real", "complex"}));
    add_global_options(generate, g);

    auto* rip = app.add_subcommand("rip", "measure the restricted-isometry constant");
    std::string rip_frame, rip_method = "exhaustive";
    std::size_t rip_s = 0, rip_samples = 1000;
    std::uint64_t rip_seed = 0;
    rip->add_option("--frame", rip_frame, "frame JSON file")->required();
    rip->add_option("--s", rip_s, "subset size cap")->required();
    rip->add_option("--method", rip_method, "exhaustive | randomized")
        ->check(CLI::IsMember({"exhaustive", "randomized"}));
    rip->add_option("--samples", rip_samples, "randomized sample count");
    auto* rip_seed_opt = rip->add_option("--seed", rip_seed, "randomized sweep seed");
    add_global_options(rip, g);

    auto* fusion = app.add_subcommand("fusion", "certify fusion bounds from a partition");
    std::string fus_frame, fus_blocks, fus_rip, fus_out_fusion;
    std::size_t fus_block_size = 0, fus_s = 0;
    fusion->add_option("--frame", fus_frame, "frame JSON file")->required();
    fusion->add_option("--blocks", fus_blocks, "explicit partition, e.g. \"0,1;2,3\"");
    fusion->add_option("--block-size", fus_block_size, "contiguous equal blocks");
    fusion->add_option("--rip", fus_rip, "rip report JSON (else computed inline)");
    fusion->add_option("--s", fus_s, "subset cap for the inline rip sweep");
    fusion->add_option("--out-fusion", fus_out_fusion, "also write the fusion frame file");
    add_global_options(fusion, g);

    auto* angles =
        app.add_subcommand("angles", "principal angles and isoclinic certification");
    std::string ang_fusion, ang_frame, ang_blocks, ang_rip;
    std::size_t ang_block_size = 0;
    double ang_eps = -1.0;
    angles->add_option("--fusion", ang_fusion, "fusion frame JSON file");
    angles->add_option("--frame", ang_frame, "frame JSON file (with a partition)");
    angles->add_option("--blocks", ang_blocks, "explicit partition");
    angles->add_option("--block-size", ang_block_size, "contiguous equal blocks");
    angles->add_option("--rip", ang_rip, "rip report for the combined certificate");
    angles->add_option("--epsilon", ang_eps, "probe epsilon for the isoclinic check");
    add_global_options(angles, g);

    auto* replace =
        app.add_subcommand("replace", "whiten blocks and certify the surviving bracket");
    std::string rep_frame, rep_blocks, rep_ids, rep_rip, rep_out_frame;
    std::size_t rep_block_size = 0, rep_first = 0, rep_s = 0;
    replace->add_option("--frame", rep_frame, "frame JSON file")->required();
    replace->add_option("--blocks", rep_blocks, "explicit partition");
    replace->add_option("--block-size", rep_block_size, "contiguous equal blocks");
    replace->add_option("--replace-first", rep_first, "whiten the first k blocks");
    replace->add_option("--replace-ids", rep_ids, "comma list of block ids to whiten");
    replace->add_option("--s", rep_s, "subset size cap")->required();
    replace->add_option("--rip", rep_rip, "rip report of the ORIGINAL frame");
    replace->add_option("--out-frame", rep_out_frame, "write the replaced frame here");
    add_global_options(replace, g);

    auto* verify =
        app.add_subcommand("verify-all", "run every certified bracket end to end");
    std::string ver_config;
    verify->add_option("--config", ver_config, "JSON config: seed, instances, force_epsilon");
    add_global_options(verify, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (generate->parsed())
            return run_generate(gen_kind, gen_dim, gen_count, gen_seed, seed_opt->count() > 0,
                                gen_iters, gen_tight_tol, gen_field, g);
        if (rip->parsed())
            return run_rip(rip_frame, rip_s, rip_method, rip_samples, rip_seed,
                           rip_seed_opt->count() > 0, g);
        if (fusion->parsed())
            return run_fusion(fus_frame, fus_blocks, fus_block_size, fus_rip, fus_s,
                              fus_out_fusion, g);
        if (angles->parsed())
            return run_angles(ang_fusion, ang_frame, ang_blocks, ang_block_size, ang_rip,
                              ang_eps >= 0 ? std::optional<double>(ang_eps) : std::nullopt, g);
        if (replace->parsed())
            return run_replace(rep_frame, rep_blocks, rep_block_size, rep_first, rep_ids, rep_s,
                               rep_rip, rep_out_frame, g);
        if (verify->parsed()) return run_verify_all(ver_config, g);
    } catch (const DidNotConverge& e) {
        std::cerr << "did not converge: " << e.what() << "\n";
        return exit_no_convergence;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
