#ifndef WARINGLAB_ARCS_HPP
#define WARINGLAB_ARCS_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace wlab {

struct RationalApprox {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double err = 0.0;  // |q*alpha - a|
};

// Best rational approximation (second kind) with q <= Q: coprime (a,q),
// 0 <= a <= q, minimizing |q*alpha - a|, via continued-fraction convergents
// with intermediate fractions.  alpha in [0,1).
RationalApprox best_approx(double alpha, double big_q);

struct ArcLabel {
  bool major = false;
  RationalApprox approx;  // populated for major arcs
};

// Major/minor classification for the arcs |q*alpha - a| <= Q*P^{-k}, q <= Q.
// Boundary ties resolve to major.
ArcLabel classify(double alpha, double big_q, double p, int k);

// Membership in N(Q,P) = M(Q,P) \ M(Q/2,P).
bool in_truncated(double alpha, double big_q, double p, int k);

// Log-power arcs: |alpha - a/q| <= (log P)^{1/8} P^{-k}, q <= (log P)^{1/8}.
std::optional<RationalApprox> in_log_arcs(double alpha, double p, int k);

// Total torus measure of M(Q,P); arcs at a=0 and a=q are identified.  In the
// disjoint regime (Q <= P^{k/2}/2) this is the exact phi-weighted sum; in the
// overlap regime the interval union is measured and `overlapped` is set.
struct MajorMeasure {
  double measure = 0.0;
  bool overlapped = false;
};
MajorMeasure measure_major(double big_q, double p, int k);

struct ArcShell {
  double q_level = 0.0;  // shell is N(q_level, P)
};
// Dyadic shells N(2^{-j} P^{k/2}, P), j = 0..ceil(log2(P^{k/2}/Q)); their
// union covers [0,1) down to M of the last halved level.
std::vector<ArcShell> dyadic_cover(double big_q, double p, int k);

// Pruning weight: q^{-2} (1+P^k|alpha-a/q|)^{-1} on M(P^{k/2}/2, P), else 0.
double upsilon(double alpha, double p, int k);

}  // namespace wlab

#endif
