#pragma once

#include "isocubic/solvers.hpp"

#include <memory>

namespace isocubic {

enum class Model { euler, alfven, chain };

std::string to_string(Model m);
Model parse_model(const std::string& s);

/// Block shape of a model at size N: su(N) for euler, su(N)+su(N) for
/// alfven, su(2)^N for chain.
BlockShape shape_for(Model m, int n);

std::unique_ptr<LinearOperator> make_operator(Model m, int n, double lambda = 5.0,
                                              double dx = 1.0);

/// The benchmark size ladder 3, 5, 9, ..., 1025 (2^k + 1), capped at max_n.
std::vector<int> size_ladder(int max_n);

/// Random spin-chain state: independent uniformly random spin directions,
/// each block with Frobenius norm 1/2 (per-spin normalization; the chain's
/// global norm grows like sqrt(N), which is what drives the large-N
/// divergence of the explicit and Newton schemes at h = 0.5).
AlgebraElement random_spin_chain(int particles, std::uint64_t seed);

/// Benchmark initial data for a model: globally normalized random element
/// for euler/alfven (vorticity normalization), per-spin normalized state
/// for the chain.
AlgebraElement random_initial(Model m, int n, std::uint64_t seed);

/// One benchmark cell: a (model, N, h, solver) combination averaged over a
/// seed range, mirroring one table entry.
struct BenchCell {
    Model model = Model::euler;
    int n = 3;
    double h = 0.5;
    double lambda = 5.0;
    SolverKind solver = SolverKind::linear;
    std::uint64_t seed_base = 42;
    int seed_count = 10;
    double tol = 1e-10;
    int max_iter = 500;
    NewtonVariant newton_variant = NewtonVariant::v2;
};

struct BenchRow {
    BenchCell cell;
    double mean_iterations = 0.0;  // meaningful only when converged_frac == 1
    double converged_frac = 0.0;
    double mean_wall_s = 0.0;
    double residual_max = 0.0;
};

/// Runs every seed of a cell; the operator may be shared across cells of the
/// same model and size.
BenchRow run_cell(const BenchCell& cell, const LinearOperator& op);
BenchRow run_cell(const BenchCell& cell);

/// Scientific notation with 10 significant digits, the CSV number format.
std::string format_sci(double v);

/// CSV serialization with the fixed header
/// model,N,h,solver,seeds,mean_iter,converged_frac,mean_wall_s,residual_max.
/// Non-converged rows leave mean_iter empty. Rows are emitted in the order
/// given; callers sort by (N, solver).
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace isocubic
