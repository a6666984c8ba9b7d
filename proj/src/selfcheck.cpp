#include "cmf/selfcheck.hpp"

namespace cmf {

namespace {
thread_local bool t_active = false;
thread_local int t_degree = 12;
thread_local SelfCheckCounts t_counts;
}  // namespace

SelfCheckScope::SelfCheckScope(int hilbert_degree) : had_prev_(t_active), prev_degree_(t_degree) {
  if (!t_active) t_counts = {};
  t_active = true;
  t_degree = hilbert_degree;
}

SelfCheckScope::~SelfCheckScope() {
  t_active = had_prev_;
  t_degree = prev_degree_;
}

const SelfCheckCounts& SelfCheckScope::counts() const { return t_counts; }

bool selfcheck_active() { return t_active; }
int selfcheck_hilbert_degree() { return t_degree; }
SelfCheckCounts& selfcheck_counts() { return t_counts; }

void selfcheck_require(bool ok, const char* what) {
  if (!ok) throw SelfCheckFailed(what);
}

}  // namespace cmf
