#include "ibc/korobov.hpp"

#include "ibc/recovery.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <unordered_map>

namespace ibc {

namespace {

constexpr double kWeightTol = 1e-12;  // relative slack on weight comparisons

void descend(int j, double budget, std::vector<int>& cur, const KorobovParams& params,
             std::vector<std::vector<int>>& out) {
    if (j == params.d) {
        out.push_back(cur);
        return;
    }
    cur[static_cast<std::size_t>(j)] = 0;
    descend(j + 1, budget, cur, params, out);
    for (int k = 1;; ++k) {
        double w = std::pow(static_cast<double>(k), 2.0 * params.alpha) /
                   params.gamma[static_cast<std::size_t>(j)];
        if (w > budget * (1.0 + kWeightTol)) break;
        for (int s : {k, -k}) {
            cur[static_cast<std::size_t>(j)] = s;
            descend(j + 1, budget / w, cur, params, out);
        }
    }
    cur[static_cast<std::size_t>(j)] = 0;
}

long mod_dot(const std::vector<int>& k, const std::vector<long>& g, long N) {
    long r = 0;
    for (std::size_t j = 0; j < k.size(); ++j)
        r = (r + static_cast<long>(k[j]) * g[j]) % N;
    return ((r % N) + N) % N;
}

long pair_count(std::vector<long>& residues) {
    std::sort(residues.begin(), residues.end());
    long pairs = 0, run = 1;
    for (std::size_t i = 1; i <= residues.size(); ++i) {
        if (i < residues.size() && residues[i] == residues[i - 1]) {
            ++run;
        } else {
            pairs += run * (run - 1) / 2;
            run = 1;
        }
    }
    return pairs;
}

}  // namespace

std::vector<std::vector<int>> index_set(double M, const KorobovParams& params) {
    params.validate();
    if (!(M >= 1.0)) throw std::invalid_argument("index_set: M >= 1 required");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(params.d), 0);
    descend(0, M, cur, params, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<double>> lattice_nodes(const Lattice& lat) {
    if (lat.N < 1 || lat.g.empty()) throw std::invalid_argument("lattice_nodes: empty lattice");
    std::vector<std::vector<double>> nodes;
    nodes.reserve(static_cast<std::size_t>(lat.N));
    for (long l = 0; l < lat.N; ++l) {
        std::vector<double> x(lat.g.size());
        for (std::size_t j = 0; j < lat.g.size(); ++j)
            x[j] = static_cast<double>((l * lat.g[j]) % lat.N) / static_cast<double>(lat.N);
        nodes.push_back(std::move(x));
    }
    return nodes;
}

Scalar lattice_coeff_estimate(const std::vector<Scalar>& samples, const Lattice& lat,
                              const std::vector<int>& k) {
    if (static_cast<long>(samples.size()) != lat.N)
        throw std::invalid_argument("lattice_coeff_estimate: need N samples");
    const long kg = mod_dot(k, lat.g, lat.N);
    Scalar sum = 0.0;
    for (long l = 0; l < lat.N; ++l) {
        double angle = -2.0 * std::numbers::pi * static_cast<double>((l * kg) % lat.N) /
                       static_cast<double>(lat.N);
        sum += samples[static_cast<std::size_t>(l)] * std::polar(1.0, angle);
    }
    return sum / static_cast<double>(lat.N);
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

long next_prime(long n) {
    long p = std::max(2L, n);
    while (!is_prime(p)) ++p;
    return p;
}

long collision_count(const std::vector<std::vector<int>>& set, const std::vector<long>& g,
                     long N) {
    std::vector<long> residues;
    residues.reserve(set.size());
    for (const auto& k : set) residues.push_back(mod_dot(k, g, N));
    return pair_count(residues);
}

CbcResult cbc_generating_vector(long N, const KorobovParams& params, double M, bool parallel) {
    if (!is_prime(N)) throw std::invalid_argument("cbc_generating_vector: N must be prime");
    const auto A = index_set(M, params);
    const auto n = static_cast<std::size_t>(A.size());

    CbcResult res;
    std::vector<long> prefix(n, 0);
    long best_score = 0;
    for (int j = 0; j < params.d; ++j) {
        std::vector<long> scores(static_cast<std::size_t>(N - 1));
        auto score_of = [&](long z) {
            std::vector<long> residues(n);
            for (std::size_t i = 0; i < n; ++i) {
                long r = (prefix[i] + static_cast<long>(A[i][static_cast<std::size_t>(j)]) * z) % N;
                residues[i] = ((r % N) + N) % N;
            }
            return pair_count(residues);
        };
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
            for (long z = 1; z < N; ++z) scores[static_cast<std::size_t>(z - 1)] = score_of(z);
        } else {
            for (long z = 1; z < N; ++z) scores[static_cast<std::size_t>(z - 1)] = score_of(z);
        }
        long best = 1;
        for (long z = 2; z < N; ++z)
            if (scores[static_cast<std::size_t>(z - 1)] < scores[static_cast<std::size_t>(best - 1)])
                best = z;
        best_score = scores[static_cast<std::size_t>(best - 1)];
        res.g.push_back(best);
        for (std::size_t i = 0; i < n; ++i) {
            long r = (prefix[i] + static_cast<long>(A[i][static_cast<std::size_t>(j)]) * best) % N;
            prefix[i] = ((r % N) + N) % N;
        }
    }
    res.collisions = best_score;
    return res;
}

namespace {

bool alias_free(const std::vector<std::vector<int>>& target,
                const std::vector<std::vector<int>>& universe, const std::vector<long>& g,
                long N) {
    std::unordered_map<long, int> counts;
    counts.reserve(universe.size() * 2);
    for (const auto& k : universe) ++counts[mod_dot(k, g, N)];
    for (const auto& k : target)
        if (counts[mod_dot(k, g, N)] != 1) return false;
    return true;
}

}  // namespace

Lattice find_reconstruction_lattice(const std::vector<std::vector<int>>& target,
                                    const std::vector<std::vector<int>>& universe,
                                    std::uint64_t seed) {
    if (target.empty()) throw std::invalid_argument("find_reconstruction_lattice: empty target");
    std::vector<std::vector<int>> U = universe;
    U.insert(U.end(), target.begin(), target.end());
    std::sort(U.begin(), U.end());
    U.erase(std::unique(U.begin(), U.end()), U.end());

    const std::size_t d = target[0].size();
    long maxabs = 0;
    for (const auto& k : U)
        for (int kj : k) maxabs = std::max(maxabs, static_cast<long>(std::abs(kj)));

    long N = next_prime(std::max<long>(static_cast<long>(U.size()), 2 * maxabs + 1));
    while (N < 2000000000L) {
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(N)));
        const int attempts = d == 1 ? 1 : 400;
        for (int a = 0; a < attempts; ++a) {
            std::vector<long> g(d, 1);
            for (std::size_t j = 1; j < d; ++j)
                g[j] = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(N - 1));
            if (alias_free(target, U, g, N)) return Lattice{N, std::move(g)};
        }
        N = next_prime(static_cast<long>(static_cast<double>(N) * 1.3) + 1);
    }
    throw NonConvergence("find_reconstruction_lattice: no alias-free lattice found");
}

TrigPoly least_squares_fit(const std::vector<std::vector<double>>& points,
                           const std::vector<Scalar>& samples,
                           const std::vector<std::vector<int>>& freqs) {
    if (points.size() != samples.size())
        throw std::invalid_argument("least_squares_fit: points/samples size mismatch");
    if (points.size() < freqs.size())
        throw std::invalid_argument("least_squares_fit: need at least |freqs| points");
    const auto P = static_cast<Eigen::Index>(points.size());
    const auto F = static_cast<Eigen::Index>(freqs.size());
    Eigen::MatrixXcd E(P, F);
    for (Eigen::Index i = 0; i < P; ++i)
        for (Eigen::Index c = 0; c < F; ++c) {
            double phase = 0.0;
            const auto& k = freqs[static_cast<std::size_t>(c)];
            for (std::size_t j = 0; j < k.size(); ++j)
                phase += k[j] * points[static_cast<std::size_t>(i)][j];
            E(i, c) = std::polar(1.0, 2.0 * std::numbers::pi * phase);
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(E, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()[F - 1];
    if (smin < 1e-8)
        throw std::runtime_error("least_squares_fit: ill-posed design, condition " +
                                 std::to_string(svd.singularValues()[0] / std::max(smin, 1e-300)));
    Eigen::VectorXcd b(P);
    for (Eigen::Index i = 0; i < P; ++i) b[i] = samples[static_cast<std::size_t>(i)];
    Eigen::VectorXcd c = svd.solve(b);

    TrigPoly out;
    out.dim = static_cast<int>(freqs.empty() ? 1 : freqs[0].size());
    for (Eigen::Index i = 0; i < F; ++i) out.coeff[freqs[static_cast<std::size_t>(i)]] = c[i];
    return out;
}

double tail_min_weight_above(double M, const KorobovParams& params) {
    params.validate();
    // The smallest achievable weight above M is at most
    // max(M 2^{2 alpha}, 1/gamma_1): increment the largest feasible k_1.
    const double B =
        std::max(M * std::pow(2.0, 2.0 * params.alpha), 1.0 / params.gamma[0]) * (1.0 + 1e-9) + 1.0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& k : index_set(B, params)) {
        double w = korobov_weight(k, params);
        if (w > M * (1.0 + kWeightTol)) best = std::min(best, w);
    }
    if (!std::isfinite(best)) throw std::logic_error("tail_min_weight_above: search bound too small");
    return best;
}

namespace {

AdaptiveAlgorithm lattice_algorithm(std::vector<std::vector<int>> A, Lattice lat, int d) {
    std::vector<Measurement> ms;
    ms.reserve(static_cast<std::size_t>(lat.N));
    for (auto& x : lattice_nodes(lat)) ms.push_back(PointEval{std::move(x)});
    AdaptiveAlgorithm alg;
    alg.info = make_nonadaptive(std::move(ms));
    alg.recovery = [A = std::move(A), lat = std::move(lat), d](const Data& data) -> Element {
        std::vector<Scalar> samples(data.begin(), data.end());
        TrigPoly out;
        out.dim = d;
        for (const auto& k : A) out.coeff[k] = lattice_coeff_estimate(samples, lat, k);
        return out;
    };
    return alg;
}

struct LsAlgorithmParts {
    AdaptiveAlgorithm alg;
    std::size_t n_points = 0;
};

LsAlgorithmParts ls_algorithm(const std::vector<std::vector<int>>& A, int d, std::uint64_t seed) {
    const std::size_t n_points = 2 * A.size();
    for (int attempt = 0;; ++attempt) {
        std::mt19937_64 rng(seed ^ (0xd1342543de82ef95ULL * static_cast<std::uint64_t>(attempt + 1)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<std::vector<double>> points(n_points, std::vector<double>(static_cast<std::size_t>(d)));
        for (auto& x : points)
            for (double& c : x) c = unif(rng);

        Eigen::MatrixXcd E(static_cast<Eigen::Index>(n_points), static_cast<Eigen::Index>(A.size()));
        for (std::size_t i = 0; i < n_points; ++i)
            for (std::size_t c = 0; c < A.size(); ++c) {
                double phase = 0.0;
                for (std::size_t j = 0; j < A[c].size(); ++j) phase += A[c][j] * points[i][j];
                E(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                    std::polar(1.0, 2.0 * std::numbers::pi * phase);
            }
        auto svd = std::make_shared<Eigen::JacobiSVD<Eigen::MatrixXcd>>(
            E, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd->singularValues()[static_cast<Eigen::Index>(A.size()) - 1] < 1e-8) {
            if (attempt >= 4)
                throw std::runtime_error("ls_algorithm: design stayed ill-posed after 5 draws");
            continue;  // resample-on-ill-condition retry
        }

        std::vector<Measurement> ms;
        ms.reserve(n_points);
        for (auto& x : points) ms.push_back(PointEval{std::move(x)});
        AdaptiveAlgorithm alg;
        alg.info = make_nonadaptive(std::move(ms));
        alg.recovery = [A, svd, d](const Data& data) -> Element {
            Eigen::VectorXcd b(static_cast<Eigen::Index>(data.size()));
            for (std::size_t i = 0; i < data.size(); ++i) b[static_cast<Eigen::Index>(i)] = data[i];
            Eigen::VectorXcd c = svd->solve(b);
            TrigPoly out;
            out.dim = d;
            for (std::size_t i = 0; i < A.size(); ++i) out.coeff[A[i]] = c[static_cast<Eigen::Index>(i)];
            return out;
        };
        return {std::move(alg), n_points};
    }
}

struct KorobovState {
    KorobovParams params;
    double M = 0.0, M_cert = 0.0;
    KorobovEstimator estimator = KorobovEstimator::Lattice;
    std::uint64_t seed = 0;
    std::vector<double> levels;
    std::vector<double> ebound;
    std::vector<std::vector<int>> cert_set;
    mutable std::mutex mu;
    mutable std::map<std::size_t, std::pair<AdaptiveAlgorithm, std::size_t>> built;

    std::size_t clamp(std::size_t k) const { return std::min(k, levels.size()); }

    const std::pair<AdaptiveAlgorithm, std::size_t>& stage(std::size_t k) const {
        std::scoped_lock lock(mu);
        const std::size_t lvl = clamp(k);
        auto it = built.find(lvl);
        if (it != built.end()) return it->second;
        auto A = index_set(levels[lvl - 1], params);
        std::pair<AdaptiveAlgorithm, std::size_t> entry;
        if (estimator == KorobovEstimator::Lattice) {
            Lattice lat = find_reconstruction_lattice(A, cert_set, seed + lvl);
            entry.second = static_cast<std::size_t>(lat.N);
            entry.first = lattice_algorithm(std::move(A), std::move(lat), params.d);
        } else {
            LsAlgorithmParts parts = ls_algorithm(A, params.d, seed + lvl);
            entry.second = parts.n_points;
            entry.first = std::move(parts.alg);
        }
        return built.emplace(lvl, std::move(entry)).first->second;
    }
};

}  // namespace

KorobovInstance korobov_instance(double t, double M, const KorobovParams& params,
                                 KorobovEstimator estimator, double M_cert, std::uint64_t seed,
                                 double level_cap) {
    params.validate();
    if (!(t > 0.0)) throw std::invalid_argument("korobov_instance: t > 0");
    if (!(M >= 1.0) || !(M_cert >= M))
        throw std::invalid_argument("korobov_instance: need 1 <= M <= M_cert");

    auto st = std::make_shared<KorobovState>();
    st->params = params;
    st->M = M;
    st->M_cert = M_cert;
    st->estimator = estimator;
    st->seed = seed;
    st->cert_set = index_set(M_cert, params);

    // achievable weight values = the possible truncation levels
    {
        std::vector<double> w;
        for (const auto& k : index_set(level_cap, params)) w.push_back(korobov_weight(k, params));
        std::sort(w.begin(), w.end());
        for (double x : w)
            if (st->levels.empty() || x > st->levels.back() * (1.0 + kWeightTol))
                st->levels.push_back(x);
    }
    const double safety = estimator == KorobovEstimator::LeastSquares ? 2.0 : 1.0;
    for (std::size_t i = 0; i < st->levels.size(); ++i) {
        double next = i + 1 < st->levels.size() ? st->levels[i + 1]
                                                : tail_min_weight_above(st->levels.back(), params);
        st->ebound.push_back(safety / std::sqrt(next));
    }

    KorobovInstance inst;
    inst.params = params;
    inst.M = M;
    inst.M_cert = M_cert;
    inst.estimator = estimator;
    inst.levels = st->levels;

    inst.pilot_lattice = find_reconstruction_lattice(index_set(M, params), st->cert_set, seed);
    inst.pilot.alg = lattice_algorithm(index_set(M, params), inst.pilot_lattice, params.d);
    inst.pilot.m = static_cast<std::size_t>(inst.pilot_lattice.N);
    inst.pilot.ball_error = 0.0;  // exact on the certified class (alias-free)

    inst.family.build = [st](std::size_t k) { return st->stage(k).first; };
    inst.family.error_bound = [st](std::size_t k) { return st->ebound[st->clamp(k) - 1]; };
    inst.family.cost_of = [st](std::size_t k) { return st->stage(k).second; };
    inst.family.k_min = 1;

    const double Mtol = M * (1.0 + kWeightTol);
    const KorobovParams p = params;
    inst.cone.T = [Mtol, p](const Element& f) -> Element {
        const auto& tp = std::get<TrigPoly>(f);
        TrigPoly out;
        out.dim = tp.dim;
        for (const auto& [k, c] : tp.coeff)
            if (korobov_weight(k, p) <= Mtol) out.coeff[k] = c;
        return out;
    };
    inst.cone.norm_f = NormSpec::korobov_norm(params);
    inst.cone.norm_h = NormSpec::korobov_norm(params);
    inst.cone.t = t;
    return inst;
}

AdaptiveAlgorithm korobov_cone_solver(double eps, double t, double M, const KorobovParams& params,
                                      KorobovEstimator estimator, double M_cert,
                                      std::uint64_t seed) {
    KorobovInstance inst = korobov_instance(t, M, params, estimator, M_cert, seed);
    return two_step_algorithm(inst.pilot, inst.family, inst.cone, eps, trig_zero(params.d));
}

}  // namespace ibc
