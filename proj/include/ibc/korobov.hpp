#pragma once

#include "ibc/cone.hpp"

#include <cstdint>

namespace ibc {

/// A_{d,M} = { k in Z^d : r_{2 alpha, gamma}(k) <= M }, enumerated by
/// residual-budget descent over the coordinates; sorted lexicographically.
std::vector<std::vector<int>> index_set(double M, const KorobovParams& params);

/// Rank-1 lattice with nodes { l g / N }, l = 0..N-1.
struct Lattice {
    long N = 0;
    std::vector<long> g;
};

std::vector<std::vector<double>> lattice_nodes(const Lattice& lat);

/// (1/N) sum_l f(x_l) e^{-2 pi i l (k.g)/N}. For trig-polynomial inputs this
/// equals the sum of f-hat over the frequencies aliasing to k.
Scalar lattice_coeff_estimate(const std::vector<Scalar>& samples, const Lattice& lat,
                              const std::vector<int>& k);

bool is_prime(long n);
long next_prime(long n);  // smallest prime >= n

struct CbcResult {
    std::vector<long> g;
    long collisions = 0;  // aliasing pairs k != k' in A_{d,M} with k.g = k'.g mod N
};

/// Component-by-component choice of g_j in {1..N-1} minimizing the number
/// of aliasing collisions among the index set restricted to the first j
/// coordinates (ties -> smallest candidate). N must be prime. The parallel
/// flag switches between the OpenMP candidate scan and the serial
/// reference implementation; both are deterministic and identical.
CbcResult cbc_generating_vector(long N, const KorobovParams& params, double M,
                                bool parallel = true);

/// Collision count of a full generating vector on an index set (oracle-
/// friendly scoring shared with the CBC search).
long collision_count(const std::vector<std::vector<int>>& set, const std::vector<long>& g, long N);

/// Smallest (seeded) prime lattice on which every target frequency is
/// alias-free within the universe: k.g != k'.g (mod N) for all k in target
/// and k' != k in target-union-universe.
Lattice find_reconstruction_lattice(const std::vector<std::vector<int>>& target,
                                    const std::vector<std::vector<int>>& universe,
                                    std::uint64_t seed);

/// argmin over span(freqs) of the sampled squared residual, by SVD; throws
/// if the design has a singular value below 1e-8 (condition reported).
TrigPoly least_squares_fit(const std::vector<std::vector<double>>& points,
                           const std::vector<Scalar>& samples,
                           const std::vector<std::vector<int>>& freqs);

/// min { r_{2 alpha, gamma}(k) : r(k) > M } by explicit mode search; its
/// inverse square root is the truncation error of the projection onto
/// A_{d,M} on the unit ball (attained at a single mode).
double tail_min_weight_above(double M, const KorobovParams& params);

enum class KorobovEstimator { Lattice, LeastSquares };

/// Two-step solver data for the pilot-sample cone
/// { f : ||f||_F <= t ||P_{A_{d,M}} f||_F }, standard information only.
/// Error certificates are exact on trig polynomials supported in
/// A_{d,M_cert} (the pilot lattice is alias-free against that universe);
/// the least-squares family carries a factor-2 safety margin on the tail
/// bound. Second-stage cardinality indices are truncation levels: index k
/// selects the k-th achievable weight value as M', with certified error
/// (next weight)^{-1/2}; cost_of maps the level to the sample count.
struct KorobovInstance {
    PilotAlgorithm pilot;
    SolverFamily family;
    ConeSpec cone;
    KorobovParams params;
    double M = 0.0;
    double M_cert = 0.0;
    KorobovEstimator estimator = KorobovEstimator::Lattice;
    std::vector<double> levels;  // achievable weight values, increasing
    Lattice pilot_lattice;
};

KorobovInstance korobov_instance(double t, double M, const KorobovParams& params,
                                 KorobovEstimator estimator, double M_cert, std::uint64_t seed,
                                 double level_cap = 1e8);

AdaptiveAlgorithm korobov_cone_solver(double eps, double t, double M, const KorobovParams& params,
                                      KorobovEstimator estimator, double M_cert,
                                      std::uint64_t seed);

}  // namespace ibc
