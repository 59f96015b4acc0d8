// Python bindings for the main operations: algebra elements, the three model
// operators, the cubic-equation solvers, the isospectral integrator, and the
// su(2) quadratic-scheme demo.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isocubic/bench.hpp"
#include "isocubic/integrator.hpp"
#include "isocubic/oracle.hpp"
#include "isocubic/riccati.hpp"

namespace py = pybind11;
using namespace isocubic;

namespace {

AlgebraElement element_from_blocks(const std::vector<Matrix>& blocks) {
    return AlgebraElement::from_blocks(blocks);
}

SolverConfig make_config(double h, double tol, int max_iter, const std::string& variant) {
    SolverConfig cfg;
    cfg.h = h;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.newton_variant = parse_newton_variant(variant);
    return cfg;
}

}  // namespace

PYBIND11_MODULE(isocubic, m) {
    m.doc() = "Structure-preserving solvers for (I-hLX)X(I+hLX)=Y on block "
              "skew-Hermitian algebras, with the isospectral two-stage integrator";

    py::register_exception<ShapeMismatchError>(m, "ShapeMismatchError");
    py::register_exception<NoRealSolutionError>(m, "NoRealSolutionError");

    py::class_<AlgebraElement>(m, "Element")
        .def(py::init(&element_from_blocks), py::arg("blocks"))
        .def_static(
            "random",
            [](const std::vector<int>& sizes, std::uint64_t seed) {
                return random_normalized(BlockShape(sizes), seed);
            },
            py::arg("sizes"), py::arg("seed"))
        .def_property_readonly("blocks",
                               [](const AlgebraElement& e) { return e.blocks(); })
        .def_property_readonly("sizes",
                               [](const AlgebraElement& e) { return e.shape().sizes(); })
        .def("norm", [](const AlgebraElement& e) { return frobenius_norm(e); })
        .def("__add__", [](const AlgebraElement& a, const AlgebraElement& b) { return a + b; })
        .def("__sub__", [](const AlgebraElement& a, const AlgebraElement& b) { return a - b; })
        .def("__mul__", [](const AlgebraElement& a, double s) { return a * s; })
        .def("__rmul__", [](const AlgebraElement& a, double s) { return a * s; })
        .def("__neg__", [](const AlgebraElement& a) { return -a; });

    py::class_<LinearOperator, std::shared_ptr<LinearOperator>>(m, "Operator")
        .def_static("euler", [](int n) -> std::shared_ptr<LinearOperator> {
            return std::make_shared<EulerSphereOperator>(n);
        }, py::arg("n"))
        .def_static("alfven", [](int n, double lam) -> std::shared_ptr<LinearOperator> {
            return std::make_shared<DriftAlfvenOperator>(n, lam);
        }, py::arg("n"), py::arg("lam"))
        .def_static("chain", [](int n, double dx) -> std::shared_ptr<LinearOperator> {
            return std::make_shared<SpinChainOperator>(n, dx);
        }, py::arg("n"), py::arg("dx") = 1.0)
        .def("apply", &LinearOperator::apply, py::arg("a"))
        .def_property_readonly("label", &LinearOperator::label);

    py::class_<SolverReport>(m, "SolverReport")
        .def_readonly("converged", &SolverReport::converged)
        .def_readonly("iterations", &SolverReport::iterations)
        .def_readonly("final_step_norm", &SolverReport::final_step_norm)
        .def_readonly("residual_norm", &SolverReport::residual_norm)
        .def_readonly("history", &SolverReport::history);

    m.def(
        "solve",
        [](const AlgebraElement& y, const LinearOperator& op, const std::string& solver,
           double h, double tol, int max_iter, const std::string& variant) {
            const SolveResult r =
                solve_with(parse_solver_kind(solver), y, op, make_config(h, tol, max_iter, variant));
            return py::make_tuple(r.x, r.report);
        },
        py::arg("y"), py::arg("op"), py::arg("solver"), py::arg("h"), py::arg("tol") = 1e-10,
        py::arg("max_iter") = 500, py::arg("variant") = "v2");

    m.def("oracle_solve", &oracle_solve, py::arg("y"), py::arg("op"), py::arg("h"),
          py::arg("tol") = 1e-12);

    m.def("commutator", &commutator);
    m.def("triple_product", &triple_product, py::arg("p"), py::arg("x"), py::arg("h"));
    m.def("norm", &frobenius_norm);
    m.def("inner", &frobenius_inner);
    m.def("residual_norm",
          [](const AlgebraElement& x, const AlgebraElement& y, const LinearOperator& op,
             double h) { return frobenius_norm(residual(x, y, op, h)); });
    m.def("eigenvalues", &hermitian_eigenvalues);
    m.def("operator_norm", &operator_norm, py::arg("op"), py::arg("seed") = 0,
          py::arg("iters") = 200);
    m.def("theorem_h_bound", &theorem_h_bound, py::arg("y"), py::arg("op"));
    m.def("hamiltonian", &hamiltonian, py::arg("y"), py::arg("op"));

    m.def(
        "step",
        [](const AlgebraElement& y, const LinearOperator& op, double h, const std::string& solver,
           double tol, int max_iter) {
            const StepResult r = step(y, op, h, parse_solver_kind(solver),
                                      make_config(h, tol, max_iter, "v2"));
            return py::make_tuple(r.y_next, r.x, r.report);
        },
        py::arg("y"), py::arg("op"), py::arg("h"), py::arg("solver") = "newton",
        py::arg("tol") = 1e-10, py::arg("max_iter") = 500);

    m.def(
        "evolve",
        [](const AlgebraElement& y0, const LinearOperator& op, double h, int steps,
           const std::string& solver, int record_every, double tol, int max_iter) {
            IntegratorConfig cfg;
            cfg.h = h;
            cfg.n_steps = steps;
            cfg.solver = parse_solver_kind(solver);
            cfg.solver_cfg = make_config(h, tol, max_iter, "v2");
            cfg.record_every = record_every;
            const TrajectoryDiagnostics d = run(y0, op, cfg);
            py::dict out;
            out["steps"] = d.steps;
            out["times"] = d.times;
            out["hamiltonian"] = d.hamiltonian;
            out["spectral_drift"] = d.spectral_drift;
            out["solver_iterations"] = d.solver_iterations;
            return out;
        },
        py::arg("y0"), py::arg("op"), py::arg("h"), py::arg("steps"),
        py::arg("solver") = "newton", py::arg("record_every") = 1, py::arg("tol") = 1e-10,
        py::arg("max_iter") = 500);

    m.def("conjugacy_check",
          [](const AlgebraElement& y, const LinearOperator& op, double h,
             const std::string& solver) {
              return conjugacy_check(y, op, h, parse_solver_kind(solver),
                                     make_config(h, 1e-10, 500, "v2"));
          },
          py::arg("y"), py::arg("op"), py::arg("h"), py::arg("solver") = "newton");

    m.def(
        "solve_su2_branches",
        [](const Eigen::Vector3d& x, const Eigen::Vector3d& y, double h) {
            const RiccatiBranches b = solve_su2_branches(x, y, h);
            py::dict out;
            out["p_parallel_plus"] = b.p_parallel_plus;
            out["p_parallel_minus"] = b.p_parallel_minus;
            out["p_perp_plus"] = b.p_perp_plus;
            out["p_perp_minus"] = b.p_perp_minus;
            out["residual_plus"] = b.residual_plus;
            out["residual_minus"] = b.residual_minus;
            out["distinct"] = b.distinct;
            return out;
        },
        py::arg("x"), py::arg("y"), py::arg("h"));
    m.def("su2_care_forward", &su2_care_forward, py::arg("x"), py::arg("p"), py::arg("h"));
    m.def("su2_to_matrix", &su2_to_matrix, py::arg("v"));
}
