// Timings of the OpenMP kernels against their serial references: exact
// matrix product, elimination, the associativity scan, and equivalence
// trials. Results must agree bit for bit; only the wall time differs.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "catmor/fincat.hpp"
#include "catmor/generators.hpp"
#include "catmor/morita.hpp"
#include "catmor/prng.hpp"
#include "catmor/qlinalg.hpp"

using namespace catmor;

namespace {

template <typename F>
double timeit(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

QMat random_matrix(int rows, int cols, SplitMix64& rng) {
  QMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = rat_frac(rng.range(-9, 9), 1 + rng.below(7));
  return m;
}

void report(const std::string& name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
              name.c_str(), serial, parallel,
              parallel > 0 ? serial / parallel : 0.0,
              same ? "match" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available, parallel paths run serially\n");
#endif
  SplitMix64 rng(20240517);

  {
    QMat a = random_matrix(140, 140, rng);
    QMat b = random_matrix(140, 140, rng);
    QMat r1, r2;
    double ts = timeit([&] { r1 = mul_serial(a, b); });
    double tp = timeit([&] { r2 = mul_parallel(a, b); });
    report("matmul 140x140", ts, tp, r1 == r2);
  }
  {
    // integer entries: representative of the assembled constraint matrices
    QMat m(140, 200);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        if (rng.below(3) == 0) m.at(r, c) = rng.range(-3, 3);
    LinearAnalysis r1, r2;
    double ts = timeit([&] { r1 = rref_kernel_image_serial(m, false); });
    double tp = timeit([&] { r2 = rref_kernel_image(m, false); });
    report("rref 140x200 sparse", ts, tp,
           r1.rref == r2.rref && r1.kernel == r2.kernel);
  }
  {
    ConjugateCategory cc = build_conjugate(gen_gamma(3));
    const FinCat& b = cc.category();
    std::vector<std::array<int, 3>> v1, v2;
    double ts = timeit([&] { v1 = associativity_violations(b, false); });
    double tp = timeit([&] { v2 = associativity_violations(b, true); });
    report("associativity scan B(gamma3)", ts, tp, v1 == v2);
  }
  {
    ConjugateCategory cc = build_conjugate(gen_gamma(2));
    AdjunctionContext ctx(std::move(cc));
    EquivalenceOptions opt;
    opt.trials = 8;
    opt.seed = 7;
    opt.max_dim = 3;
    std::vector<TrialResult> rs;
    double t = timeit([&] { rs = check_equivalence(ctx, opt); });
    bool ok = true;
    for (const auto& r : rs) ok = ok && r.pass;
    std::printf("%-28s %8.3fs for %d trials  %s\n", "equivalence trials gamma2",
                t, opt.trials, ok ? "all pass" : "FAILURES");
  }
  return 0;
}
