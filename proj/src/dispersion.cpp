#include "vfp/dispersion.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "vfp/errors.hpp"

namespace vfp {

namespace {
constexpr cplx kI(0.0, 1.0);
}

Eigen::MatrixXcd assemble_generator(double k, double beta, const Potential& p, int degree) {
    if (!(beta > 0.0)) throw ValidationError("assemble_generator: beta must be positive");
    if (degree < 2) throw ValidationError("assemble_generator: degree must be at least 2");
    if (!std::isfinite(k)) throw ValidationError("assemble_generator: k must be finite");

    const int n = degree + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = cplx(-i, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        const cplx c = -kI * k * std::sqrt((i + 1.0) / beta);
        m(i, i + 1) = c;
        m(i + 1, i) = c;
    }
    // mean-field coupling ik beta Uhat(k) q_0 v sqrt(mu), with v sqrt(mu) =
    // beta^{-1/2} e_1: a single entry in column 0
    m(1, 0) += kI * k * std::sqrt(beta) * p.hat(k);
    return m;
}

EigenResult leading_eigenpair(const Eigen::MatrixXcd& M, double k) {
    if (M.rows() != M.cols() || M.rows() < 1)
        throw ValidationError("leading_eigenpair: matrix must be square and nonempty");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M);
    if (solver.info() != Eigen::Success)
        throw NumericalError("leading_eigenpair: eigensolver did not converge on a " +
                             std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                             " matrix");

    const auto& vals = solver.eigenvalues();
    int best = 0;
    for (int i = 1; i < vals.size(); ++i) {
        const cplx a = vals(i), b = vals(best);
        if (a.real() > b.real() ||
            (a.real() == b.real() && std::abs(a.imag()) > std::abs(b.imag())))
            best = i;
    }

    Eigen::VectorXcd q = solver.eigenvectors().col(best);
    if (std::abs(q(0)) > 1e-12 * q.norm()) {
        q /= q(0);  // density moment of q is exactly its e_0 coefficient
    } else {
        q /= q.norm();
        for (int i = 0; i < q.size(); ++i) {
            if (std::abs(q(i)) > 1e-12) {
                q *= std::conj(q(i)) / std::abs(q(i));
                break;
            }
        }
    }

    const cplx lambda = vals(best);
    const double residual = (M * q - lambda * q).norm() / q.norm();
    if (residual > 1e-8 * M.norm())
        throw NumericalError("leading_eigenpair: residual " + std::to_string(residual) +
                             " exceeds 1e-8 * ||M|| = " + std::to_string(1e-8 * M.norm()));

    EigenResult out;
    out.k = k;
    out.lambda = lambda;
    out.residual = residual;
    out.q.assign(q.data(), q.data() + q.size());
    return out;
}

cplx expansion_prediction(double beta, double k) {
    if (!(beta > 0.0)) throw ValidationError("expansion_prediction: beta must be positive");
    return cplx((beta - 1.0) / beta * k * k, 0.0);
}

VCoeffs expansion_eigenvector(double beta, double k, int degree) {
    if (degree < 2) throw ValidationError("expansion_eigenvector: degree must be at least 2");
    const int n = degree + 1;
    const HermiteBasis basis(beta, n);
    const double lambda2 = (beta - 1.0) / beta;

    VCoeffs q(n, cplx(0.0, 0.0));
    q[0] = 1.0;
    q[1] = kI * k * (beta - 1.0) / std::sqrt(beta);

    // q2 = lambda2 L^{-1}[(1 - beta v^2) sqrt(mu)] and (1 - beta v^2) sqrt(mu)
    // = -sqrt(2) e_2
    VCoeffs rhs(n, cplx(0.0, 0.0));
    rhs[2] = -std::sqrt(2.0);
    const VCoeffs sol = solve_fp(basis, rhs);
    for (int i = 0; i < n; ++i) q[i] += lambda2 * k * k * sol[i];
    return q;
}

RemainderResult remainder_iteration(double beta, double k, const Potential& p, int degree,
                                    double tol, int max_iter, double k_max) {
    if (!(beta > 0.0)) throw ValidationError("remainder_iteration: beta must be positive");
    if (degree < 4) throw ValidationError("remainder_iteration: degree must be at least 4");
    if (!(std::abs(k) > 0.0))
        throw ValidationError("remainder_iteration: k must be nonzero");
    if (std::abs(k) > k_max)
        throw ValidationError("remainder_iteration: |k| = " + std::to_string(std::abs(k)) +
                              " exceeds k_max = " + std::to_string(k_max));
    if (!(tol > 0.0) || max_iter < 1)
        throw ValidationError("remainder_iteration: tol must be positive, max_iter >= 1");

    const int n = degree + 1;
    const HermiteBasis basis(beta, n);
    const double lambda2 = (beta - 1.0) / beta;
    const double sqb = std::sqrt(beta);

    // expansion pieces with powers of k factored out: q = q0 + k q1 + k^2 q2 + k^3 q_R
    VCoeffs q0(n, cplx(0.0, 0.0)), q1(n, cplx(0.0, 0.0)), q2(n, cplx(0.0, 0.0));
    q0[0] = 1.0;
    q1[1] = kI * (beta - 1.0) / sqb;
    q2[2] = lambda2 / std::sqrt(2.0);

    // potential tail Uhat(k) - Uhat(0) - Uhat'(0) k, the odd term vanishing
    // since U is even; enters at e_1 with weight i beta k^{-2} beta^{-1/2}
    const cplx force1 = kI * sqb * p.hat_minus_one(k) / (k * k);

    VCoeffs qr(n, cplx(0.0, 0.0));
    cplx lam(0.0, 0.0);  // -i int v q2 sqrt(mu) dv = 0 by parity
    double prev_diff = -1.0, diff = 0.0;
    RemainderResult out;

    for (int iter = 1; iter <= max_iter; ++iter) {
        VCoeffs tmp(n);
        for (int i = 0; i < n; ++i) tmp[i] = q2[i] + k * qr[i];
        const VCoeffs vq = apply_velocity(basis, tmp);

        // RHS of -L q^{n+1} = ..., negated once so solve_fp (which inverts L)
        // applies; the e_0 component cancels between the lam term and the
        // velocity moment by construction of the lam update
        VCoeffs rhs(n);
        for (int i = 0; i < n; ++i)
            rhs[i] = lam * (q0[i] + k * q1[i] + k * k * q2[i] + k * k * k * qr[i]) +
                     kI * vq[i] + lambda2 * (q1[i] + k * q2[i] + k * k * qr[i]);
        rhs[1] -= force1;

        VCoeffs q_next = solve_fp(basis, rhs);
        const cplx lam_next = -kI * k * q_next[1] / sqb;

        double dq = 0.0;
        for (int i = 0; i < n; ++i) dq += std::norm(q_next[i] - qr[i]);
        diff = std::sqrt(dq) + std::abs(lam_next - lam);
        if (prev_diff > 0.0) out.contraction = std::max(out.contraction, diff / prev_diff);
        prev_diff = diff;

        qr = std::move(q_next);
        lam = lam_next;
        out.iterations = iter;
        if (diff < tol) {
            out.lambda_R = lam;
            out.q_R = std::move(qr);
            return out;
        }
    }
    throw ConvergenceError(
        "remainder_iteration: no convergence after " + std::to_string(max_iter) +
            " iterations (k is likely outside the contraction range)",
        out.iterations, diff);
}

std::vector<double> DispersionCurve::unstable_band() const {
    std::vector<double> ks;
    for (const auto& r : results)
        if (r.lambda.real() > 0.0) ks.push_back(r.k);
    return ks;
}

DispersionCurve dispersion_scan(double beta, const Potential& p,
                                const std::vector<double>& k_grid, int degree, int threads) {
    if (k_grid.empty()) throw ValidationError("dispersion_scan: k grid must be nonempty");
    for (size_t i = 1; i < k_grid.size(); ++i)
        if (!(k_grid[i] > k_grid[i - 1]))
            throw ValidationError("dispersion_scan: k grid must be strictly increasing");

    DispersionCurve curve;
    curve.beta = beta;
    curve.potential_kind = p.kind();
    curve.degree = degree;
    curve.results.resize(k_grid.size());

    auto solve_one = [&](size_t i) {
        curve.results[i] =
            leading_eigenpair(assemble_generator(k_grid[i], beta, p, degree), k_grid[i]);
    };

    const size_t total = k_grid.size();
    const size_t workers =
        std::min<size_t>(threads < 1 ? 1 : static_cast<size_t>(threads), total);
    if (workers <= 1) {
        for (size_t i = 0; i < total; ++i) solve_one(i);
    } else {
        // results land in their slot by index, so the merge is deterministic
        // no matter how the pool schedules
        std::atomic<size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto body = [&]() {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= total) return;
                try {
                    solve_one(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    return curve;
}

FitReport verify_asymptotics(const DispersionCurve& curve) {
    constexpr double lo = 0.01 - 1e-12, hi = 0.2 + 1e-12;
    std::vector<const EigenResult*> pts;
    for (const auto& r : curve.results)
        if (r.k >= lo && r.k <= hi) pts.push_back(&r);
    if (pts.size() < 6)
        throw ValidationError(
            "verify_asymptotics: need at least 6 curve points with k in [0.01, 0.2], have " +
            std::to_string(pts.size()));

    // Two refinements over a naive fit, both needed to keep the genuine k^5+
    // tail of lambda(k) from bleeding into the low-order coefficients:
    //   * mirror each point to -k via lambda(-k) = conj(lambda(k)), which
    //     decouples odd from even coefficients over the one-sided window;
    //   * weight each equation by k^-2 twice (solve the system for
    //     lambda/k^2), so small k anchors c2 instead of being drowned by the
    //     larger values at the top of the window.
    const size_t m = pts.size();
    Eigen::MatrixXcd a(2 * m, 3);
    Eigen::VectorXcd b(2 * m);
    for (size_t i = 0; i < m; ++i) {
        const double k = pts[i]->k;
        const double w = 1.0 / (k * k * k * k);
        for (int sign = 0; sign < 2; ++sign) {
            const double ks = sign == 0 ? k : -k;
            const size_t row = 2 * i + sign;
            a(row, 0) = w * ks * ks;
            a(row, 1) = w * ks * ks * ks;
            a(row, 2) = w * ks * ks * ks * ks;
            b(row) = w * (sign == 0 ? pts[i]->lambda : std::conj(pts[i]->lambda));
        }
    }
    const Eigen::VectorXcd c = a.colPivHouseholderQr().solve(b);

    FitReport rep;
    rep.c2 = c(0);
    rep.c3 = c(1);
    rep.c4 = c(2);
    double worst = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double k = pts[i]->k;
        const cplx fit = c(0) * k * k + c(1) * k * k * k + c(2) * k * k * k * k;
        worst = std::max(worst, std::abs(pts[i]->lambda - fit));
    }
    rep.max_residual = worst;
    return rep;
}

}  // namespace vfp
