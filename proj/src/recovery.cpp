#include "ibc/recovery.hpp"

#include "ibc/linprog.hpp"
#include "ibc/sampling.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>

namespace ibc {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kResidTol = 1e-9;
constexpr int kEnumLimit = 12;  // 3^m vertex candidates

bool is_real_matrix(const Eigen::MatrixXcd& A) {
    if (A.size() == 0) return true;
    return A.imag().cwiseAbs().maxCoeff() <= 1e-14;
}

Eigen::VectorXcd to_complex(const Eigen::VectorXd& v) { return v.cast<Scalar>(); }

}  // namespace

void FiniteLinearProblem::validate() const {
    if (S.cols() != N.cols()) throw std::invalid_argument("problem: S and N column counts differ");
    if (N.rows() > N.cols()) throw std::invalid_argument("problem: more measurements than dimensions");
    if (!(p == 1.0 || p == 2.0 || std::isinf(p)))
        throw std::invalid_argument("problem: p must be 1, 2 or inf");
    if (!real_field && p != 2.0)
        throw std::invalid_argument("problem: only p = 2 is supported over the complex field");
    if (real_field && (!is_real_matrix(S) || !is_real_matrix(N)))
        throw std::invalid_argument("problem: real field with complex entries");
}

Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& N) {
    const Eigen::Index m = N.cols();
    if (N.rows() == 0) return Eigen::MatrixXcd::Identity(m, m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(N, Eigen::ComputeFullV);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > kRankTol) ++rank;
    return svd.matrixV().rightCols(m - rank);
}

Eigen::MatrixXd l1_section_vertices(const Eigen::MatrixXd& N) {
    const int m = static_cast<int>(N.cols());
    const int n = static_cast<int>(N.rows());
    if (m > kEnumLimit) throw std::invalid_argument("l1 section: dimension too large for enumeration");
    std::vector<Eigen::VectorXd> verts;
    // A vertex has support J with the columns {N_J; sigma_J} independent and
    // the unique solution of N h = 0, sum_j sigma_j h_j = 1 sign-feasible.
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> J;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) J.push_back(j);
        const int k = static_cast<int>(J.size());
        if (k > n + 1) continue;
        Eigen::MatrixXd E(n + 1, k);
        for (int c = 0; c < k; ++c) E.col(c).head(n) = N.col(J[static_cast<std::size_t>(c)]);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
        rhs[n] = 1.0;
        for (unsigned sb = 0; sb < (1u << k); ++sb) {
            for (int c = 0; c < k; ++c) E(n, c) = (sb & (1u << c)) ? -1.0 : 1.0;
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(E);
            qr.setThreshold(kRankTol);
            if (qr.rank() < k) continue;
            Eigen::VectorXd w = qr.solve(rhs);
            if ((E * w - rhs).norm() > kResidTol) continue;
            bool feasible = true;
            for (int c = 0; c < k && feasible; ++c)
                feasible = E(n, c) * w[c] >= -1e-12;
            if (!feasible) continue;
            Eigen::VectorXd h = Eigen::VectorXd::Zero(m);
            for (int c = 0; c < k; ++c) h[J[static_cast<std::size_t>(c)]] = w[c];
            verts.push_back(std::move(h));
        }
    }
    Eigen::MatrixXd V(m, static_cast<Eigen::Index>(verts.size()));
    for (Eigen::Index c = 0; c < V.cols(); ++c) V.col(c) = verts[static_cast<std::size_t>(c)];
    return V;
}

Eigen::MatrixXd linf_section_vertices(const Eigen::MatrixXd& N) {
    const int m = static_cast<int>(N.cols());
    const int n = static_cast<int>(N.rows());
    if (m > kEnumLimit)
        throw std::invalid_argument("linf section: dimension too large for enumeration");
    int rank = 0;
    if (n > 0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(N);
        qr.setThreshold(kRankTol);
        rank = static_cast<int>(qr.rank());
    }
    std::vector<Eigen::VectorXd> verts;
    // A vertex fixes the coordinates outside a free set F at +-1; the free
    // ones are the unique solution of N_F h_F = -N_C sigma.
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> F, C;
        for (int j = 0; j < m; ++j)
            (mask & (1u << j) ? F : C).push_back(j);
        const int kf = static_cast<int>(F.size());
        if (kf > rank) continue;
        Eigen::MatrixXd NF(n, kf), NC(n, static_cast<int>(C.size()));
        for (int c = 0; c < kf; ++c) NF.col(c) = N.col(F[static_cast<std::size_t>(c)]);
        for (int c = 0; c < static_cast<int>(C.size()); ++c)
            NC.col(c) = N.col(C[static_cast<std::size_t>(c)]);
        for (unsigned sb = 0; sb < (1u << C.size()); ++sb) {
            Eigen::VectorXd sigma(static_cast<Eigen::Index>(C.size()));
            for (int c = 0; c < static_cast<int>(C.size()); ++c)
                sigma[c] = (sb & (1u << c)) ? -1.0 : 1.0;
            Eigen::VectorXd rhs = C.empty() ? Eigen::VectorXd::Zero(n) : (-NC * sigma).eval();
            Eigen::VectorXd w(kf);
            if (kf == 0) {
                if (rhs.size() > 0 && rhs.norm() > kResidTol) continue;
            } else {
                Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(NF);
                qr.setThreshold(kRankTol);
                if (qr.rank() < kf) continue;
                w = qr.solve(rhs);
                if ((NF * w - rhs).norm() > kResidTol) continue;
                if (w.lpNorm<Eigen::Infinity>() > 1.0 + 1e-12) continue;
            }
            Eigen::VectorXd h(m);
            for (int c = 0; c < kf; ++c) h[F[static_cast<std::size_t>(c)]] = w[c];
            for (int c = 0; c < static_cast<int>(C.size()); ++c)
                h[C[static_cast<std::size_t>(c)]] = sigma[c];
            verts.push_back(std::move(h));
        }
    }
    Eigen::MatrixXd V(m, static_cast<Eigen::Index>(verts.size()));
    for (Eigen::Index c = 0; c < V.cols(); ++c) V.col(c) = verts[static_cast<std::size_t>(c)];
    return V;
}

DiamResult diam_oracle(const FiniteLinearProblem& problem) {
    problem.validate();
    const Eigen::Index m = problem.m();
    DiamResult res;
    res.witness = Eigen::VectorXcd::Zero(m);
    if (problem.p == 2.0) {
        if (problem.out_norm.kind != NormSpec::Kind::L2 &&
            !(problem.out_norm.kind == NormSpec::Kind::Lp && problem.out_norm.p == 2.0))
            throw std::invalid_argument("diam oracle: p = 2 route needs an l2 output norm");
        Eigen::MatrixXcd K = kernel_basis(problem.N);
        if (K.cols() == 0) return res;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(problem.S * K,
                                               Eigen::ComputeThinU | Eigen::ComputeThinV);
        res.value = 2.0 * svd.singularValues()[0];
        res.witness = K * svd.matrixV().col(0);
        return res;
    }
    Eigen::MatrixXd N = problem.N.real();
    Eigen::MatrixXd V = problem.p == 1.0 ? l1_section_vertices(N) : linf_section_vertices(N);
    double best = 0.0;
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
        Eigen::VectorXcd h = to_complex(V.col(c));
        double val = minkowski_functional(problem.out_norm,
                                          Element{VectorElem{problem.S * h, true}});
        if (val > best) {
            best = val;
            res.witness = h;
        }
    }
    res.value = 2.0 * best;
    return res;
}

Eigen::VectorXcd basis_pursuit(const Eigen::MatrixXcd& N, const Eigen::VectorXcd& y, double tol,
                               long max_iter) {
    const Eigen::Index m = N.cols();
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(N);
    Eigen::VectorXcd x0 = cod.solve(y);
    if ((N * x0 - y).norm() > kResidTol * std::max(1.0, y.norm()))
        throw std::invalid_argument("basis_pursuit: y is not in the range of N");

    // Real data: the problem is a linear program, solve it exactly.
    if (is_real_matrix(N) && is_real_matrix(y)) {
        const Eigen::Index n = N.rows();
        Eigen::MatrixXd A(n, 2 * m);
        A.leftCols(m) = N.real();
        A.rightCols(m) = -N.real();
        Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * m);
        LPResult lp = solve_lp(A, y.real(), c);
        if (!lp.optimal) throw NonConvergence("basis_pursuit: LP did not reach an optimum");
        return to_complex((lp.x.head(m) - lp.x.tail(m)).eval());
    }

    const double rho = 1.0;
    const double kappa = 1.0 / rho;
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(m), u = Eigen::VectorXcd::Zero(m), x = x0;
    for (long it = 0; it < max_iter; ++it) {
        Eigen::VectorXcd v = z - u;
        x = v - cod.solve((N * v - y).eval());  // projection onto {N x = y}
        Eigen::VectorXcd w = x + u;
        Eigen::VectorXcd z_prev = z;
        for (Eigen::Index i = 0; i < m; ++i) {
            double a = std::abs(w[i]);
            z[i] = a <= kappa ? Scalar(0.0) : w[i] * ((a - kappa) / a);
        }
        u += x - z;
        double primal = (x - z).lpNorm<Eigen::Infinity>();
        double dual = rho * (z - z_prev).lpNorm<Eigen::Infinity>();
        if (it > 0 && primal <= tol && dual <= tol) return x;
    }
    throw NonConvergence("basis_pursuit: ADMM did not converge");
}

double min_l1_norm_exact(const Eigen::MatrixXd& N, const Eigen::VectorXd& y) {
    const int m = static_cast<int>(N.cols());
    const int n = static_cast<int>(N.rows());
    if (m > 20) throw std::invalid_argument("min_l1_norm_exact: dimension too large");
    if (y.norm() == 0.0) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    // The optimum is attained at a basic solution: support with independent columns.
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> J;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) J.push_back(j);
        if (static_cast<int>(J.size()) > n) continue;
        Eigen::MatrixXd NJ(n, static_cast<int>(J.size()));
        for (int c = 0; c < static_cast<int>(J.size()); ++c)
            NJ.col(c) = N.col(J[static_cast<std::size_t>(c)]);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(NJ);
        qr.setThreshold(kRankTol);
        if (qr.rank() < static_cast<Eigen::Index>(J.size())) continue;
        Eigen::VectorXd w = qr.solve(y);
        if ((NJ * w - y).norm() > kResidTol * std::max(1.0, y.norm())) continue;
        best = std::min(best, w.lpNorm<1>());
    }
    if (!std::isfinite(best)) throw std::invalid_argument("min_l1_norm_exact: y not in range");
    return best;
}

namespace {

Eigen::VectorXcd min_linf_preimage(const Eigen::MatrixXcd& Nc, const Eigen::VectorXcd& yc) {
    if (!is_real_matrix(Nc) || !is_real_matrix(yc))
        throw std::invalid_argument("min-norm preimage: p = inf needs the real field");
    Eigen::MatrixXd N = Nc.real();
    Eigen::VectorXd y = yc.real();
    const int m = static_cast<int>(N.cols());
    const int n = static_cast<int>(N.rows());
    // variables [h+, h-, s, t] >= 0; N(h+ - h-) = y; h+_i + h-_i + s_i = t.
    const int nv = 3 * m + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + m, nv);
    A.block(0, 0, n, m) = N;
    A.block(0, m, n, m) = -N;
    for (int i = 0; i < m; ++i) {
        A(n + i, i) = 1.0;
        A(n + i, m + i) = 1.0;
        A(n + i, 2 * m + i) = 1.0;
        A(n + i, 3 * m) = -1.0;
    }
    Eigen::VectorXd b(n + m);
    b.head(n) = y;
    b.tail(m).setZero();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
    c[3 * m] = 1.0;
    LPResult lp = solve_lp(A, b, c);
    if (!lp.optimal) throw std::invalid_argument("min-norm preimage: y not in range of N");
    return to_complex((lp.x.head(m) - lp.x.segment(m, m)).eval());
}

}  // namespace

Eigen::VectorXcd min_norm_preimage(const Eigen::MatrixXcd& N, const Eigen::VectorXcd& y, double p,
                                   double delta) {
    if (p == 2.0 ? delta < 0.0 : !(delta > 0.0))
        throw std::invalid_argument("min_norm_preimage: delta must be positive (>= 0 for p = 2)");
    const double nrm = y.norm();
    if (nrm == 0.0) return Eigen::VectorXcd::Zero(N.cols());
    if (p == 2.0) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(N);
        Eigen::VectorXcd x = cod.solve(y);
        if ((N * x - y).norm() > kResidTol * std::max(1.0, nrm))
            throw std::invalid_argument("min_norm_preimage: y not in range of N");
        return x;
    }
    // Normalize first so the map is exactly positively homogeneous even
    // though the inner solver is iterative.
    Eigen::VectorXcd yn = y / nrm;
    Eigen::VectorXcd x;
    if (p == 1.0) {
        double tol = std::clamp(delta * 1e-3, 1e-10, 1e-8);
        x = basis_pursuit(N, yn, tol);
    } else if (std::isinf(p)) {
        x = min_linf_preimage(N, yn);
    } else {
        throw std::invalid_argument("min_norm_preimage: p must be 1, 2 or inf");
    }
    return nrm * x;
}

VecMap homogenize(VecMap phi, bool real_field) {
    return [phi = std::move(phi), real_field](const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        Eigen::Index j = -1;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            if (real_field ? y[i].real() != 0.0 : y[i] != Scalar(0.0)) {
                j = i;
                break;
            }
        }
        if (j < 0) return phi(y);
        Scalar lambda = real_field ? Scalar(y[j].real() > 0.0 ? 1.0 : -1.0) : y[j] / std::abs(y[j]);
        return lambda * phi((y / lambda).eval());
    };
}

RecoveryMap homogeneous_recovery(const FiniteLinearProblem& problem, double delta) {
    problem.validate();
    Eigen::MatrixXcd S = problem.S, N = problem.N;
    const double p = problem.p;
    VecMap plus = [S, N, p, delta](const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        if (y.norm() == 0.0) return Eigen::VectorXcd::Zero(S.rows());
        return S * min_norm_preimage(N, y, p, delta);
    };
    return RecoveryMap{homogenize(std::move(plus), problem.real_field), delta};
}

InformationMap nonadaptive_projection(const AdaptiveAlgorithm& alg) {
    const InformationMap& info = alg.info;
    std::vector<Measurement> ms;
    Data data;
    if (!info.stop(data)) {
        for (std::size_t j = 1; j <= info.n_max; ++j) {
            Measurement m = info.select(j, data);
            if (std::holds_alternative<BlockNorm>(m))
                throw IncompatibleKind("nonadaptive projection: non-linear measurement");
            ms.push_back(std::move(m));
            data.push_back(0.0);  // every linear measurement vanishes at f = 0
            if (info.stop(data)) break;
        }
        if (!info.stop(data))
            throw TerminationFailure("nonadaptive projection: no stop within n_max");
    }
    return make_nonadaptive(std::move(ms));
}

Eigen::MatrixXcd functional_matrix(const InformationMap& info, Eigen::Index m) {
    std::vector<Eigen::VectorXcd> rows;
    Data data;
    if (!info.stop(data)) {
        for (std::size_t j = 1; j <= info.n_max; ++j) {
            Measurement meas = info.select(j, data);
            const auto* lf = std::get_if<LinearFunctional>(&meas);
            if (!lf) throw IncompatibleKind("functional matrix: not a linear functional");
            if (lf->a.size() != m) throw std::invalid_argument("functional matrix: size mismatch");
            rows.push_back(lf->a);
            data.push_back(0.0);
            if (info.stop(data)) break;
        }
    }
    Eigen::MatrixXcd N(static_cast<Eigen::Index>(rows.size()), m);
    for (Eigen::Index i = 0; i < N.rows(); ++i) N.row(i) = rows[static_cast<std::size_t>(i)];
    return N;
}

KashinAlgorithm kashin_linear_algorithm(int m, int n) {
    if (m < 1 || (m & (m - 1)) != 0) throw std::invalid_argument("kashin: m must be a power of two");
    if (n < 1 || n > m) throw std::invalid_argument("kashin: need 1 <= n <= m");
    Eigen::MatrixXd H(1, 1);
    H(0, 0) = 1.0;
    while (H.rows() < m) {
        Eigen::MatrixXd H2(2 * H.rows(), 2 * H.cols());
        H2 << H, H, H, -H;
        H = std::move(H2);
    }
    KashinAlgorithm out;
    out.N = H.topRows(n) / std::sqrt(static_cast<double>(m));

    std::vector<Measurement> ms;
    ms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ms.push_back(LinearFunctional{to_complex(out.N.row(i).transpose().eval())});
    Eigen::MatrixXd Nt = out.N.transpose();
    out.alg.info = make_nonadaptive(std::move(ms));
    out.alg.recovery = [Nt](const Data& data) -> Element {
        Eigen::VectorXcd y(static_cast<Eigen::Index>(data.size()));
        for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = data[static_cast<std::size_t>(i)];
        return VectorElem{Nt.cast<Scalar>() * y, true};
    };

    // linear map => the worst case over the l1 ball sits at a vertex +-e_j
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(m, m) - Nt * out.N;
    out.exact_error = 0.0;
    for (int j = 0; j < m; ++j) out.exact_error = std::max(out.exact_error, R.col(j).norm());
    return out;
}

double problem_error_at(const FiniteLinearProblem& problem, const VecMap& phi,
                        const Eigen::VectorXcd& f) {
    Eigen::VectorXcd truth = problem.S * f;
    Eigen::VectorXcd out = phi((problem.N * f).eval());
    return minkowski_functional(problem.out_norm,
                                Element{VectorElem{truth - out, problem.real_field}});
}

double exact_error_ball_vertices(const FiniteLinearProblem& problem, const VecMap& phi) {
    problem.validate();
    const int m = static_cast<int>(problem.m());
    double worst = 0.0;
    if (problem.p == 1.0) {
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
            e[j] = 1.0;
            worst = std::max(worst, problem_error_at(problem, phi, e));
            worst = std::max(worst, problem_error_at(problem, phi, (-e).eval()));
        }
        return worst;
    }
    if (!std::isinf(problem.p))
        throw std::invalid_argument("exact_error_ball_vertices: p must be 1 or inf");
    if (m > kEnumLimit)
        throw std::invalid_argument("exact_error_ball_vertices: dimension too large");
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        Eigen::VectorXcd f(m);
        for (int j = 0; j < m; ++j) f[j] = (mask & (1u << j)) ? -1.0 : 1.0;
        worst = std::max(worst, problem_error_at(problem, phi, f));
    }
    return worst;
}

AdaptiveAlgorithm to_algorithm(const FiniteLinearProblem& problem, VecMap phi) {
    std::vector<Measurement> ms;
    ms.reserve(static_cast<std::size_t>(problem.n()));
    for (Eigen::Index i = 0; i < problem.n(); ++i)
        ms.push_back(LinearFunctional{problem.N.row(i).transpose().eval()});
    AdaptiveAlgorithm alg;
    alg.info = make_nonadaptive(std::move(ms));
    const bool real_field = problem.real_field;
    alg.recovery = [phi = std::move(phi), real_field](const Data& data) -> Element {
        Eigen::VectorXcd y(static_cast<Eigen::Index>(data.size()));
        for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = data[static_cast<std::size_t>(i)];
        return VectorElem{phi(y), real_field};
    };
    return alg;
}

double sampled_error_l2_ball(const FiniteLinearProblem& problem, const VecMap& phi, int trials,
                             std::uint64_t seed, bool parallel) {
    problem.validate();
    if (problem.p != 2.0) throw std::invalid_argument("sampled_error_l2_ball: p must be 2");
    const Eigen::Index m = problem.m();

    std::vector<Element> samples;
    samples.reserve(static_cast<std::size_t>(trials) + 2);
    DiamResult diam = diam_oracle(problem);
    if (diam.witness.norm() > 0.0) {
        Eigen::VectorXcd w = diam.witness / diam.witness.norm();
        samples.push_back(VectorElem{w, problem.real_field});
        samples.push_back(VectorElem{(-w).eval(), problem.real_field});
    }
    for (int i = 0; i < trials; ++i) {
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::VectorXcd f(m);
        for (Eigen::Index j = 0; j < m; ++j) {
            double re = gauss(rng);
            double im = problem.real_field ? 0.0 : gauss(rng);
            f[j] = Scalar(re, im);
        }
        double nrm = f.norm();
        if (nrm == 0.0) continue;
        samples.push_back(VectorElem{(f / nrm).eval(), problem.real_field});
    }

    AdaptiveAlgorithm alg = to_algorithm(problem, phi);
    Eigen::MatrixXcd S = problem.S;
    auto solution = [S](const Element& f) -> Element {
        return VectorElem{S * std::get<VectorElem>(f).v, std::get<VectorElem>(f).real_field};
    };
    return parallel ? max_error_over_samples_omp(alg, solution, problem.out_norm, samples)
                    : max_error_over_samples_serial(alg, solution, problem.out_norm, samples);
}

}  // namespace ibc
