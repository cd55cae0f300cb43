// Acceptance suite: one criterion per function, one [PASS]/[FAIL] line each,
// nonzero exit on any failure.  Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <complex>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <framekit/framekit.hpp>

using namespace framekit;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && pass) {
            pass = false;
            detail = message;
        }
    }
};

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(12);
    out << x;
    return out.str();
}

Frame<double> perturbed_identity(std::size_t n, double delta, std::uint64_t seed) {
    Rng rng(seed);
    Matrix<double> v = Matrix<double>::identity(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) v(i, j) += delta * rng.normal();
    for (std::size_t j = 0; j < n; ++j) {
        auto c = v.col(j);
        scale_in_place<double>(c, 1.0 / norm<double>(c));
    }
    return Frame<double>::from_columns(std::move(v));
}

Frame<double> mercedes_benz() {
    const double r = std::sqrt(3.0) / 2.0;
    return Frame<double>::from_columns(Matrix<double>(2, 3, {1.0, 0.0, -0.5, r, -0.5, -r}));
}

/// Deterministic partition of {0..count-1} into blocks of size <= cap.
Partition random_partition(std::size_t count, std::size_t cap, Rng& rng) {
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        std::swap(order[i], order[i + rng.below(order.size() - i)]);
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t at = 0; at < count;) {
        const std::size_t take = std::min<std::size_t>(1 + rng.below(cap), count - at);
        blocks.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(at),
                            order.begin() + static_cast<std::ptrdiff_t>(at + take));
        at += take;
    }
    return Partition(count, std::move(blocks));
}

// 1. Orthonormal inputs: zero RIP constant, unit fusion bounds, 0/1 principal
//    cosines, replacement a no-op; equalities within 1e-8.
Criterion trivial_exactness() {
    Criterion c{"1 trivial-exactness"};
    auto f = make_orthonormal_frame<double>(8);

    auto rip = rip_exhaustive(f, 2);
    c.require(std::abs(rip.epsilon_hat) <= 1e-8, "epsilon_hat " + fmt(rip.epsilon_hat));

    const Partition partition = Partition::contiguous(8, 2);
    auto ff = fusion_frame_from_partition(f, partition);
    c.require(std::abs(ff.lower_bound() - 1.0) <= 1e-8 &&
                  std::abs(ff.upper_bound() - 1.0) <= 1e-8,
              "fusion bounds [" + fmt(ff.lower_bound()) + "," + fmt(ff.upper_bound()) + "]");

    for (std::size_t i = 0; i < ff.size(); ++i) {
        for (double cos : principal_angles(ff.subspaces()[i], ff.subspaces()[i]).cosines)
            c.require(std::abs(cos - 1.0) <= 1e-8, "self cosine " + fmt(cos));
        for (std::size_t j = i + 1; j < ff.size(); ++j)
            for (double cos : principal_angles(ff.subspaces()[i], ff.subspaces()[j]).cosines)
                c.require(std::abs(cos) <= 1e-8, "cross-block cosine " + fmt(cos));
    }

    std::vector<std::size_t> every_block(partition.block_count());
    std::iota(every_block.begin(), every_block.end(), std::size_t{0});
    auto replaced = replace_blocks(f, partition, every_block);
    c.require((replaced.frame.vectors() - f.vectors()).frobenius_norm() <= 1e-8,
              "replacement moved an orthonormal basis");
    return c;
}

// 2. Mercedes-Benz fixture vs hand-derived constants, within 1e-10.
Criterion mercedes_oracles() {
    Criterion c{"2 mercedes-benz-oracles"};
    auto f = mercedes_benz();
    c.require(std::abs(f.bounds().lower - 1.5) <= 1e-10 &&
                  std::abs(f.bounds().upper - 1.5) <= 1e-10,
              "frame bounds [" + fmt(f.bounds().lower) + "," + fmt(f.bounds().upper) + "]");

    auto rb = riesz_bounds(f, {0, 1});
    c.require(std::abs(rb.lambda_max - 1.5) <= 1e-10 && std::abs(rb.lambda_min - 0.5) <= 1e-10,
              "pair Gram eigenvalues [" + fmt(rb.lambda_min) + "," + fmt(rb.lambda_max) + "]");

    auto rip = rip_exhaustive(f, 2);
    c.require(std::abs(rip.epsilon_hat - 1.0) <= 1e-10, "epsilon_hat " + fmt(rip.epsilon_hat));

    auto ff = fusion_frame_from_partition(f, Partition::singletons(3));
    const auto scaled_eye = Matrix<double>::identity(2).scaled(1.5);
    c.require((ff.fusion_operator() - scaled_eye).frobenius_norm() <= 1e-10,
              "singleton fusion operator is not 1.5 I");
    return c;
}

// 3. Near-tightness bracket on 50 seeded tight instances with eps < 1.
Criterion near_tightness_bracket() {
    Criterion c{"3 near-tightness-bracket"};
    const auto started = std::chrono::steady_clock::now();
    int instances = 0;
    for (std::uint64_t seed = 1; instances < 50 && c.pass; ++seed) {
        Frame<double> f = (seed % 2 == 0)
                              ? make_harmonic_frame<double>(6, 12)
                              : make_random_unit_tight_frame<double>(4 + seed % 4, 5 + seed % 4,
                                                                     seed);
        const std::size_t s = 2;
        auto rip = rip_exhaustive(f, s);
        c.require(rip.epsilon_hat < 1.0,
                  "seed " + std::to_string(seed) + " epsilon " + fmt(rip.epsilon_hat));
        if (!c.pass) break;
        Rng rng(seed * 31 + 7);
        auto report = certify_near_tightness(f, random_partition(f.count(), s, rng), rip);
        c.require(report.measured_lower >= report.theoretical_lower - 1e-8 &&
                      report.measured_upper <= report.theoretical_upper + 1e-8,
                  "seed " + std::to_string(seed) + " measured [" + fmt(report.measured_lower) +
                      "," + fmt(report.measured_upper) + "] bracket [" +
                      fmt(report.theoretical_lower) + "," + fmt(report.theoretical_upper) + "]");
        ++instances;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    c.require(elapsed <= 10.0, "runtime " + fmt(elapsed) + "s exceeds 10s");
    return c;
}

// 4. Span-correlation bounds on 50 seeded Riesz subsets, both constants.
Criterion span_correlation_bounds() {
    Criterion c{"4 span-correlation-bounds"};
    int done = 0;
    for (std::uint64_t seed = 1; done < 50 && c.pass; ++seed) {
        Frame<double> f = (seed % 2 == 0)
                              ? perturbed_identity(10, 0.02, seed)
                              : make_random_unit_tight_frame<double>(6 + seed % 3, 7 + seed % 3,
                                                                     seed);
        Rng rng(seed + 900);
        auto subset = rng.subset(f.count(), 4);
        auto r = check_span_correlation_bound(f, subset,
                                              {{subset[0], subset[1]}, {subset[2], subset[3]}});
        c.require(r.epsilon < 1.0, "seed " + std::to_string(seed) + " epsilon " + fmt(r.epsilon));
        c.require(r.max_correlation <= 2.0 * r.epsilon * (1.0 + r.epsilon / 2.0) + 1e-10,
                  "seed " + std::to_string(seed) + " correlation " + fmt(r.max_correlation) +
                      " above 2e(1+e/2) " + fmt(r.bound_sharp));
        c.require(r.max_correlation <=
                      2.0 * r.epsilon * (1.0 + r.epsilon) * (1.0 + r.epsilon) + 1e-10,
                  "seed " + std::to_string(seed) + " correlation above 2e(1+e)^2");
        ++done;
    }
    return c;
}

// 5. Operator power brackets for a in {1/2,1,2} and negatives on 25 blocks.
Criterion operator_power_brackets() {
    Criterion c{"5 operator-power-brackets"};
    int done = 0;
    for (std::uint64_t seed = 1; done < 25 && c.pass; ++seed) {
        auto base = perturbed_identity(9, 0.05, seed);
        Rng rng(seed + 300);
        auto block = rng.subset(9, 3 + rng.below(2));
        auto sub = Frame<double>::from_columns(base.vectors().select_cols(block));
        std::vector<std::size_t> all(sub.count());
        std::iota(all.begin(), all.end(), std::size_t{0});
        const double eps = riesz_bounds(sub, all).epsilon;
        if (std::isinf(eps)) continue;
        for (const auto& pb :
             check_operator_power_bounds(sub, eps, {0.5, 1.0, 2.0, -0.5, -1.0, -2.0})) {
            c.require(pb.min_eig >= pb.bracket_low - 1e-8 && pb.max_eig <= pb.bracket_high + 1e-8,
                      "seed " + std::to_string(seed) + " exponent " + fmt(pb.exponent) +
                          " spectrum [" + fmt(pb.min_eig) + "," + fmt(pb.max_eig) +
                          "] bracket [" + fmt(pb.bracket_low) + "," + fmt(pb.bracket_high) + "]");
        }
        ++done;
    }
    return c;
}

// 6. Projection-residual bound with the inverse-root map on 25 blocks: the
//    exact extremal ratio obeys both the measured-hypothesis form and the
//    instantiated 4e(1+e) form.
Criterion projection_residual_bounds() {
    Criterion c{"6 projection-residual-bound"};
    int done = 0;
    for (std::uint64_t seed = 1; done < 25 && c.pass; ++seed) {
        auto f = perturbed_identity(10, 0.01, seed);
        Rng rng(seed + 400);
        auto block = rng.subset(10, 4);
        std::vector<std::size_t> sub_block = {block[0], block[1]};
        const double eps = riesz_bounds(f, block).epsilon;
        if (std::isinf(eps) || eps >= 1.0) continue;

        const Matrix<double> cols = f.vectors().select_cols(block);
        const Matrix<double> inv_root = spectral_power(cols * cols.adjoint(), -0.5, 1e-12);
        auto w1 = Subspace<double>::from_spanning(f.vectors().select_cols(sub_block));
        auto w2 = Subspace<double>::from_spanning(inv_root * f.vectors().select_cols(sub_block));

        const double hypothesis = eps / (1.0 + eps);
        auto r = check_projection_residual_bound(w1, w2, inv_root, hypothesis, 25, seed);
        const double measured = r.epsilon_measured;
        c.require(r.worst_residual_sq <=
                      4.0 * measured / ((1.0 - measured) * (1.0 - measured)) + 1e-10,
                  "seed " + std::to_string(seed) + " residual " + fmt(r.worst_residual_sq) +
                      " above the measured-constant bound");
        c.require(r.worst_residual_sq <= 4.0 * eps * (1.0 + eps) + 1e-10,
                  "seed " + std::to_string(seed) + " residual " + fmt(r.worst_residual_sq) +
                      " above 4e(1+e) " + fmt(4.0 * eps * (1.0 + eps)));
        ++done;
    }
    return c;
}

// 7. Replacement bracket on small-epsilon pipelines plus the frozen budget
//    oracle: the closing-formula limit at eps=0.01 is 541.
Criterion replacement_bracket() {
    Criterion c{"7 replacement-bracket"};
    c.require(max_replaceable_blocks(0.01) == 541,
              "budget at 0.01 is " + std::to_string(max_replaceable_blocks(0.01)));

    int done = 0;
    for (std::uint64_t seed = 1; done < 10 && c.pass; ++seed) {
        auto f = perturbed_identity(12, 0.002, seed);
        const std::size_t s = 3;
        auto rip = rip_exhaustive(f, s);
        c.require(rip.epsilon_hat <= 0.02,
                  "seed " + std::to_string(seed) + " epsilon " + fmt(rip.epsilon_hat) +
                      " above the 0.02 pipeline target");
        if (!c.pass) break;
        const Partition partition = Partition::contiguous(12, 3);
        c.require(partition.block_count() <= max_replaceable_blocks(rip.epsilon_hat),
                  "partition exceeds the replaceable budget");
        for (std::size_t k1 : {std::size_t{1}, std::size_t{2}, partition.block_count()}) {
            std::vector<std::size_t> ids(k1);
            std::iota(ids.begin(), ids.end(), std::size_t{0});
            auto rf = replace_blocks(f, partition, ids);
            auto r = certify_replacement(rf, s, rip);
            c.require(!r.bracket_vacuous, "bracket vacuous at k1 " + std::to_string(k1));
            if (r.holds.has_value())
                c.require(*r.holds, "seed " + std::to_string(seed) + " k1 " + std::to_string(k1) +
                                        " measured [" + fmt(r.measured_lower) + "," +
                                        fmt(r.measured_upper) + "] bracket [" +
                                        fmt(r.theoretical_lower) + "," +
                                        fmt(r.theoretical_upper) + "]");
        }
        ++done;
    }
    return c;
}

// 8. Frame and fusion reconstruction round-trips, 100 seeded instances each.
Criterion reconstruction_round_trips() {
    Criterion c{"8 reconstruction-round-trips"};
    for (std::uint64_t seed = 1; seed <= 100 && c.pass; ++seed) {
        Rng rng(seed);
        auto f = Frame<double>::from_columns(rng.gaussian_matrix<double>(5, 9));
        auto x = rng.unit_vector<double>(5);
        const auto back = reconstruct(f, analysis_apply(f, x));
        c.require(distance<double>(back, x) <= 1e-8,
                  "frame round-trip error at seed " + std::to_string(seed));
    }
    for (std::uint64_t seed = 1; seed <= 100 && c.pass; ++seed) {
        Rng rng(seed + 5000);
        auto f = Frame<double>::from_columns(rng.gaussian_matrix<double>(6, 12));
        auto ff = fusion_frame_from_partition(f, Partition::contiguous(12, 3));
        auto x = rng.unit_vector<double>(6);
        const auto back = fusion_reconstruct(ff, fusion_measure(ff, x));
        c.require(distance<double>(back, x) <= 1e-8,
                  "fusion round-trip error at seed " + std::to_string(seed));
    }
    return c;
}

// 9. Local/global composition bracket on 25 seeded weighted instances, plus
//    the Parseval corollary.
Criterion composition_bracket() {
    Criterion c{"9 composition-bracket"};
    int done = 0;
    for (std::uint64_t seed = 1; done < 25 && c.pass; ++seed) {
        Rng rng(seed + 7000);
        const std::size_t n = 5;
        std::vector<Subspace<double>> subs;
        std::vector<double> weights;
        std::vector<Matrix<double>> locals;
        const std::size_t blocks = 2 + rng.below(2);
        for (std::size_t i = 0; i < blocks; ++i) {
            const std::size_t d = 1 + rng.below(3);
            auto sub = Subspace<double>::from_spanning(rng.gaussian_matrix<double>(n, d));
            weights.push_back(0.5 + 1.5 * rng.uniform());
            locals.push_back(sub.basis() *
                             rng.gaussian_matrix<double>(sub.dim(), sub.dim() + rng.below(3)));
            subs.push_back(std::move(sub));
        }
        FusionFrame<double> ff(std::move(subs), std::move(weights));
        auto r = check_local_global_composition(ff, locals);
        c.require(r.composed_lower >= r.local_lower * r.fusion_lower - 1e-8 &&
                      r.composed_upper <= r.local_upper * r.fusion_upper + 1e-8,
                  "seed " + std::to_string(seed) + " composed [" + fmt(r.composed_lower) + "," +
                      fmt(r.composed_upper) + "] outside [" +
                      fmt(r.local_lower * r.fusion_lower) + "," +
                      fmt(r.local_upper * r.fusion_upper) + "]");
        ++done;
    }

    // Parseval corollary: Parseval locals inside an orthonormal decomposition
    auto f = make_orthonormal_frame<double>(6);
    auto ff = fusion_frame_from_partition(f, Partition::contiguous(6, 3));
    Rng rng(4242);
    std::vector<Matrix<double>> locals;
    for (const auto& sub : ff.subspaces()) {
        auto parseval = canonical_parseval(
            Frame<double>::from_columns(rng.gaussian_matrix<double>(sub.dim(), sub.dim() + 2)));
        locals.push_back(sub.basis() * parseval.vectors());
    }
    auto r = check_local_global_composition(ff, locals);
    c.require(std::abs(r.composed_lower - 1.0) <= 1e-8 &&
                  std::abs(r.composed_upper - 1.0) <= 1e-8,
              "Parseval corollary bounds [" + fmt(r.composed_lower) + "," +
                  fmt(r.composed_upper) + "]");
    return c;
}

// 10. Full-coverage randomized sweeps equal exhaustive sweeps bit for bit on
//     every frame with C(M,s) <= 10^4.
Criterion sweep_oracle_consistency() {
    Criterion c{"10 sweep-oracle-consistency"};
    struct Case {
        Frame<double> frame;
        std::size_t s;
        std::string label;
    };
    std::vector<Case> cases;
    cases.push_back({mercedes_benz(), 2, "mercedes s=2"});
    cases.push_back({make_harmonic_frame<double>(3, 7), 2, "harmonic(3,7) s=2"});
    cases.push_back({make_harmonic_frame<double>(6, 12), 2, "harmonic(6,12) s=2"});
    cases.push_back({make_harmonic_frame<double>(8, 16), 3, "harmonic(8,16) s=3"});
    cases.push_back({make_random_unit_tight_frame<double>(4, 5, 9), 3, "tight(4,5) s=3"});
    cases.push_back({perturbed_identity(8, 0.01, 2), 2, "perturbed(8) s=2"});

    for (const auto& [frame, s, label] : cases) {
        const auto ex = rip_exhaustive(frame, s);
        c.require(ex.subsets_checked <= 10'000, label + " exceeds the 10^4 case bound");
        const auto rz = rip_randomized(frame, s, ex.subsets_checked, 1);
        c.require(ex.epsilon_hat == rz.epsilon_hat,
                  label + ": epsilon differs (" + fmt(ex.epsilon_hat) + " vs " +
                      fmt(rz.epsilon_hat) + ")");
        c.require(ex.witness == rz.witness, label + ": witness differs");
    }

    // complex field path
    auto hc = make_harmonic_frame<std::complex<double>>(3, 7);
    const auto ex = rip_exhaustive(hc, 2);
    const auto rz = rip_randomized(hc, 2, 21, 3);
    c.require(ex.epsilon_hat == rz.epsilon_hat && ex.witness == rz.witness,
              "complex harmonic(3,7): reports differ");
    return c;
}

} // namespace

int main() {
    const auto started = std::chrono::steady_clock::now();
    std::vector<Criterion> results;
    results.push_back(trivial_exactness());
    results.push_back(mercedes_oracles());
    results.push_back(near_tightness_bracket());
    results.push_back(span_correlation_bounds());
    results.push_back(operator_power_brackets());
    results.push_back(projection_residual_bounds());
    results.push_back(replacement_bracket());
    results.push_back(reconstruction_round_trips());
    results.push_back(composition_bracket());
    results.push_back(sweep_oracle_consistency());

    bool all_pass = true;
    for (const auto& c : results) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.pass) std::cout << " -- " << c.detail;
        std::cout << "\n";
        all_pass = all_pass && c.pass;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::cout << (all_pass ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " in " << elapsed
              << "s\n";
    return all_pass ? 0 : 1;
}
