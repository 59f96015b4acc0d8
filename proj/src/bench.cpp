#include "isocubic/bench.hpp"

#include "isocubic/riccati.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

namespace isocubic {

std::string to_string(Model m) {
    switch (m) {
        case Model::euler: return "euler";
        case Model::alfven: return "alfven";
        case Model::chain: return "chain";
    }
    return "euler";
}

Model parse_model(const std::string& s) {
    if (s == "euler") return Model::euler;
    if (s == "alfven") return Model::alfven;
    if (s == "chain") return Model::chain;
    throw std::invalid_argument("unknown model: " + s);
}

BlockShape shape_for(Model m, int n) {
    switch (m) {
        case Model::euler: return BlockShape::single(n);
        case Model::alfven: return BlockShape::uniform(2, n);
        case Model::chain: return BlockShape::uniform(n, 2);
    }
    throw std::logic_error("unreachable model");
}

std::unique_ptr<LinearOperator> make_operator(Model m, int n, double lambda, double dx) {
    switch (m) {
        case Model::euler: return std::make_unique<EulerSphereOperator>(n);
        case Model::alfven: return std::make_unique<DriftAlfvenOperator>(n, lambda);
        case Model::chain: return std::make_unique<SpinChainOperator>(n, dx);
    }
    throw std::logic_error("unreachable model");
}

std::vector<int> size_ladder(int max_n) {
    std::vector<int> out;
    for (int n = 3; n <= max_n && n <= 1025; n = 2 * (n - 1) + 1) {
        out.push_back(n);
    }
    return out;
}

AlgebraElement random_spin_chain(int particles, std::uint64_t seed) {
    detail::GaussianStream g(seed);
    const double target = 0.5;  // per-block Frobenius norm
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(particles));
    for (int i = 0; i < particles; ++i) {
        Eigen::Vector3d s(g.next(), g.next(), g.next());
        s *= std::sqrt(2.0) * target / s.norm();
        blocks.push_back(su2_to_matrix(s));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

AlgebraElement random_initial(Model m, int n, std::uint64_t seed) {
    if (m == Model::chain) return random_spin_chain(n, seed);
    return random_normalized(shape_for(m, n), seed);
}

BenchRow run_cell(const BenchCell& cell, const LinearOperator& op) {
    BenchRow row;
    row.cell = cell;
    SolverConfig cfg;
    cfg.h = cell.h;
    cfg.tol = cell.tol;
    cfg.max_iter = cell.max_iter;
    cfg.newton_variant = cell.newton_variant;

    long iter_sum = 0;
    int converged = 0;
    double wall_sum = 0.0;
    double residual_max = 0.0;
    for (int s = 0; s < cell.seed_count; ++s) {
        const AlgebraElement y =
            random_initial(cell.model, cell.n, cell.seed_base + static_cast<std::uint64_t>(s));
        const auto t0 = std::chrono::steady_clock::now();
        const SolveResult res = solve_with(cell.solver, y, op, cfg);
        const auto t1 = std::chrono::steady_clock::now();
        wall_sum += std::chrono::duration<double>(t1 - t0).count();
        if (res.report.converged) {
            ++converged;
            iter_sum += res.report.iterations;
            residual_max = std::max(residual_max, res.report.residual_norm);
        }
    }
    row.converged_frac = static_cast<double>(converged) / cell.seed_count;
    row.mean_iterations = converged > 0 ? static_cast<double>(iter_sum) / converged : 0.0;
    row.mean_wall_s = wall_sum / cell.seed_count;
    row.residual_max = residual_max;
    return row;
}

BenchRow run_cell(const BenchCell& cell) {
    const auto op = make_operator(cell.model, cell.n, cell.lambda);
    return run_cell(cell, *op);
}

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9e", v);
    return buf;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "model,N,h,solver,seeds,mean_iter,converged_frac,mean_wall_s,residual_max\n";
    for (const BenchRow& r : rows) {
        out += to_string(r.cell.model);
        out += ',';
        out += std::to_string(r.cell.n);
        out += ',';
        out += format_sci(r.cell.h);
        out += ',';
        out += to_string(r.cell.solver);
        out += ',';
        out += std::to_string(r.cell.seed_count);
        out += ',';
        if (r.converged_frac == 1.0) out += format_sci(r.mean_iterations);
        out += ',';
        out += format_sci(r.converged_frac);
        out += ',';
        out += format_sci(r.mean_wall_s);
        out += ',';
        out += format_sci(r.residual_max);
        out += '\n';
    }
    return out;
}

}  // namespace isocubic
