// entropy.hpp -- Renyi and von Neumann relative entropies on density
// matrices, the trace-overlap remainder bounds that sharpen them, the
// quantum Pinsker family, and the two-block pinching reduction.
#pragma once

#include "cpcert/convexity.hpp"
#include "cpcert/matcore.hpp"

#include <utility>

namespace cpcert {

// ||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// D_alpha(rho||sigma) = log(Tr[rho^alpha sigma^{1-alpha}]) / (alpha - 1) for
// alpha in (0, 1); +infinity when the trace underflows (orthogonal supports).
double renyi_relative_entropy(const DensityMatrix& rho,
                              const DensityMatrix& sigma, double alpha);

// D(rho||sigma) = Tr[rho (log rho - log sigma)], +infinity on support
// mismatch (mass of rho outside supp(sigma) above 1e-10).
double von_neumann_relative_entropy(const DensityMatrix& rho,
                                    const DensityMatrix& sigma);

// Tr[sigma^{1-1/p} rho^{1/p}] for p in (1, 2]; equals exp((alpha-1) D_alpha)
// at alpha = 1/p.
double trace_overlap(const DensityMatrix& rho, const DensityMatrix& sigma,
                     double p);

// The two remainder bounds on the overlap, for p in (1, 2]:
//   Tr[sigma^{1-1/p} rho^{1/p}] <= 1 - ((p-1)/4) ||rho^{1/p} - sigma^{1/p}||_p^2
//   Tr[sigma^{1-1/p} rho^{1/p}] <= 1 - (1/(p' 2^{p'-1})) ||rho^{1/p'} - sigma^{1/p'}||_p'^p'
std::pair<InequalityCertificate, InequalityCertificate> overlap_certificates(
    const DensityMatrix& rho, const DensityMatrix& sigma, double p);

// D_alpha >= (1/(4 alpha)) ||rho^alpha - sigma^alpha||_{1/alpha}^2 for
// alpha in [1/2, 1).
InequalityCertificate renyi_pinsker_certificate(const DensityMatrix& rho,
                                                const DensityMatrix& sigma,
                                                double alpha);

// D_alpha >= (alpha/2) ||rho - sigma||_1^2 for alpha in (0, 1).
InequalityCertificate classical_renyi_bound_certificate(
    const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

// (alpha/3) ||A - B||_1 <= ||A^alpha - B^alpha||_{1/alpha}
//                          * max(||A^alpha||_{1/alpha}, ||B^alpha||_{1/alpha})
// for PSD A, B and alpha in (0, 1).
InequalityCertificate ricard_bound_certificate(const HermitianMatrix& a,
                                               const HermitianMatrix& b,
                                               double alpha);

// D_alpha >= (alpha/36) ||rho - sigma||_1^2, the trace-distance weakening of
// the Renyi Pinsker bound (constant worse by exactly 18).
InequalityCertificate weakened_pinsker_certificate(const DensityMatrix& rho,
                                                   const DensityMatrix& sigma,
                                                   double alpha);

// D(rho||sigma) >= (1/2) ||rho - sigma||_1^2.
InequalityCertificate pinsker_certificate(const DensityMatrix& rho,
                                          const DensityMatrix& sigma);

// Two-block pinching along the positive eigenspace P of rho - sigma. The
// pinched states commute, keep the trace distance, and cannot increase any
// D_alpha. p_weight = Tr[P rho], q_weight = Tr[P sigma].
struct PinchingResult {
  HermitianMatrix projector;
  DensityMatrix rho_hat;
  DensityMatrix sigma_hat;
  double p_weight;
  double q_weight;
};

PinchingResult pinch_to_commuting(const DensityMatrix& rho,
                                  const DensityMatrix& sigma);

}  // namespace cpcert
