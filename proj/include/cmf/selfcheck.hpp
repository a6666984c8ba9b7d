#ifndef CMF_SELFCHECK_HPP
#define CMF_SELFCHECK_HPP

#include "cmf/errors.hpp"

namespace cmf {

// Opt-in verification of every intermediate object built on this thread
// while a SelfCheckScope is alive:
//   - each finished Groebner basis is a Buchberger fixpoint (all S-vectors
//     within the computed degree range reduce to zero),
//   - each resolution satisfies d^2 = 0 (modulo f over R/(f)),
//   - each module resolved over R has lead-term Hilbert function equal to
//     the one read off its Betti numbers, in degrees up to hilbert_degree,
//   - each extracted factorization satisfies A*B = B*A = f*I.
// A failed check throws SelfCheckFailed.
struct SelfCheckCounts {
  long long groebner = 0, spairs = 0, complexes = 0, hilbert = 0, factorizations = 0;
};

class SelfCheckScope {
 public:
  explicit SelfCheckScope(int hilbert_degree = 12);
  ~SelfCheckScope();
  SelfCheckScope(const SelfCheckScope&) = delete;
  SelfCheckScope& operator=(const SelfCheckScope&) = delete;
  const SelfCheckCounts& counts() const;

 private:
  bool had_prev_;
  int prev_degree_;
};

bool selfcheck_active();
int selfcheck_hilbert_degree();
SelfCheckCounts& selfcheck_counts();  // of the current thread
void selfcheck_require(bool ok, const char* what);

}  // namespace cmf

#endif  // CMF_SELFCHECK_HPP
