#pragma once

// Shared small types for the toolkit: fixed-capacity vectors and symmetric
// matrices in dimension 3..8, axis-aligned boxes, error codes, deterministic
// sampling, and a chunked parallel-for whose reduction order does not depend
// on the thread count.

#include <array>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cvt {

inline constexpr int kMaxDim = 8;

// ---------------------------------------------------------------------------
// Errors

enum class errc {
  out_of_domain,
  non_finite,
  non_positive_value,
  singularity,
  no_root,
  budget_exceeded,
  not_centered,
  negative_source,
  cone_exit,
  root_fail,
  unknown_fixture,
  bad_format,
  precondition,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::out_of_domain: return "OutOfDomain";
    case errc::non_finite: return "NonFinite";
    case errc::non_positive_value: return "NonPositiveValue";
    case errc::singularity: return "Singularity";
    case errc::no_root: return "NoRoot";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_centered: return "NotCentered";
    case errc::negative_source: return "NegativeSource";
    case errc::cone_exit: return "ConeExit";
    case errc::root_fail: return "RootFail";
    case errc::unknown_fixture: return "UnknownFixture";
    case errc::bad_format: return "BadFormat";
    case errc::precondition: return "Precondition";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw error(code, what);
}

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

// ---------------------------------------------------------------------------
// Vec: a point of R^n, n <= kMaxDim, stored inline.

class Vec {
 public:
  Vec() = default;
  explicit Vec(int n, double fill = 0.0) : n_(n) {
    require(n >= 1 && n <= kMaxDim, errc::bad_format, "Vec dimension");
    a_.fill(0.0);
    for (int i = 0; i < n_; ++i) a_[i] = fill;
  }
  Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    require(n_ >= 1 && n_ <= kMaxDim, errc::bad_format, "Vec dimension");
    a_.fill(0.0);
    int i = 0;
    for (double x : xs) a_[i++] = x;
  }
  static Vec from(const std::vector<double>& xs) {
    Vec v(static_cast<int>(xs.size()));
    for (int i = 0; i < v.n_; ++i) v.a_[i] = xs[i];
    return v;
  }
  static Vec unit(int n, int axis) {
    Vec v(n);
    v.a_[axis] = 1.0;
    return v;
  }

  int dim() const { return n_; }
  double& operator[](int i) { return a_[i]; }
  double operator[](int i) const { return a_[i]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n_; ++i) a_[i] += o.a_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n_; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) a_[i] *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator/(Vec a, double s) { return a *= 1.0 / s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }

  double dot(const Vec& o) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += a_[i] * o.a_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
  double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i) m = std::max(m, std::abs(a_[i]));
    return m;
  }
  bool finite() const {
    for (int i = 0; i < n_; ++i)
      if (!std::isfinite(a_[i])) return false;
    return true;
  }
  std::vector<double> to_vector() const {
    return std::vector<double>(a_.begin(), a_.begin() + n_);
  }

  // Strict lexicographic order, used for deterministic tie-breaking.
  bool lex_less(const Vec& o) const {
    for (int i = 0; i < n_; ++i) {
      if (a_[i] < o.a_[i]) return true;
      if (a_[i] > o.a_[i]) return false;
    }
    return false;
  }

 private:
  int n_ = 0;
  std::array<double, kMaxDim> a_{};
};

// ---------------------------------------------------------------------------
// SymMat: symmetric n x n matrix, packed upper triangle.

class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(int n) : n_(n) {
    require(n >= 1 && n <= kMaxDim, errc::bad_format, "SymMat dimension");
    a_.fill(0.0);
  }
  static SymMat identity(int n, double scale = 1.0) {
    SymMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = scale;
    return m;
  }
  static SymMat outer(const Vec& v) {
    SymMat m(v.dim());
    for (int i = 0; i < v.dim(); ++i)
      for (int j = i; j < v.dim(); ++j) m.at(i, j) = v[i] * v[j];
    return m;
  }

  int dim() const { return n_; }
  double& at(int i, int j) {  // canonical slot, i <= j enforced by swap
    if (i > j) std::swap(i, j);
    return a_[idx(i, j)];
  }
  double operator()(int i, int j) const {
    if (i > j) std::swap(i, j);
    return a_[idx(i, j)];
  }

  SymMat& operator+=(const SymMat& o) {
    for (int t = 0; t < slots(); ++t) a_[t] += o.a_[t];
    return *this;
  }
  SymMat& operator-=(const SymMat& o) {
    for (int t = 0; t < slots(); ++t) a_[t] -= o.a_[t];
    return *this;
  }
  SymMat& operator*=(double s) {
    for (int t = 0; t < slots(); ++t) a_[t] *= s;
    return *this;
  }
  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
  friend SymMat operator*(double s, SymMat a) { return a *= s; }

  Vec mul(const Vec& x) const {
    Vec y(n_);
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }
  double quad(const Vec& x) const { return x.dot(mul(x)); }
  double trace() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }
  double max_abs() const {
    double m = 0.0;
    for (int t = 0; t < slots(); ++t) m = std::max(m, std::abs(a_[t]));
    return m;
  }
  bool finite() const {
    for (int t = 0; t < slots(); ++t)
      if (!std::isfinite(a_[t])) return false;
    return true;
  }

 private:
  int slots() const { return n_ * (n_ + 1) / 2; }
  int idx(int i, int j) const {  // i <= j
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }
  int n_ = 0;
  std::array<double, kMaxDim*(kMaxDim + 1) / 2> a_{};
};

// ---------------------------------------------------------------------------
// Box: axis-aligned box with positive side lengths.

struct Box {
  Vec lo;
  Vec hi;

  Box() = default;
  Box(const Vec& lo_, const Vec& hi_) : lo(lo_), hi(hi_) {
    require(lo.dim() == hi.dim(), errc::bad_format, "Box dims");
    for (int i = 0; i < lo.dim(); ++i)
      require(hi[i] > lo[i], errc::bad_format, "Box side lengths must be > 0");
  }
  static Box centered(int n, double half_side) {
    return Box(Vec(n, -half_side), Vec(n, half_side));
  }
  static Box everywhere(int n) {
    return Box(Vec(n, -1e300), Vec(n, 1e300));
  }
  int dim() const { return lo.dim(); }
  bool contains(const Vec& x, double slack = 0.0) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
    return true;
  }
  double min_side() const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim(); ++i) m = std::min(m, hi[i] - lo[i]);
    return m;
  }
};

// ---------------------------------------------------------------------------
// Deterministic RNG. Hand-rolled so that report bytes do not depend on the
// standard library's distribution implementations.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(splitmix(seed)) {
    for (int i = 0; i < 4; ++i) s_ = splitmix(s_);
  }
  std::uint64_t next_u64() {
    // xorshift64*
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545F4914F6CDD1DULL;
  }
  double uniform() {  // [0,1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }
  double gauss() {
    // Box-Muller; one value per call keeps the stream simple.
    double u1 = std::max(uniform(), 1e-300);
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  Vec gauss_vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss();
    return v;
  }
  Vec unit_vec(int n) {
    for (;;) {
      Vec v = gauss_vec(n);
      double r = v.norm();
      if (r > 1e-12) return v / r;
    }
  }
  Vec in_ball(int n, const Vec& center, double radius) {
    Vec d = unit_vec(n);
    double r = radius * std::pow(uniform(), 1.0 / n);
    return center + r * d;
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }
  std::uint64_t s_;
};

// ---------------------------------------------------------------------------
// Thread cap and chunked parallel map. Results are combined in chunk order,
// so the reduction is identical for any worker count.

inline int thread_cap() {
  static int cap = [] {
    if (const char* env = std::getenv("CB_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    return 1;
  }();
  return cap;
}

inline void set_thread_cap(int threads) {
  // The env var mirrors the CLI flag; keep a single source of truth.
  static std::string storage;
  storage = "CB_THREADS=" + std::to_string(std::max(1, threads));
  putenv(storage.data());
}

// Applies fn(i) for i in [0, count) and lets the caller fold chunk results in
// order. fn must be pure; chunk boundaries are fixed independent of workers.
template <typename Fn>
void parallel_chunks(std::int64_t count, const Fn& fn_chunk) {
  const int workers = std::max(1, thread_cap());
  const std::int64_t chunk =
      std::max<std::int64_t>(1, (count + 8 * workers - 1) / (8 * workers));
  const std::int64_t nchunks = (count + chunk - 1) / chunk;
  if (workers == 1 || nchunks <= 1) {
    for (std::int64_t c = 0; c < nchunks; ++c)
      fn_chunk(c, c * chunk, std::min(count, (c + 1) * chunk));
    return;
  }
  std::vector<std::thread> pool;
  std::int64_t per = (nchunks + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t c0 = w * per, c1 = std::min(nchunks, (w + 1) * per);
    if (c0 >= c1) break;
    pool.emplace_back([&, c0, c1] {
      for (std::int64_t c = c0; c < c1; ++c)
        fn_chunk(c, c * chunk, std::min(count, (c + 1) * chunk));
    });
  }
  for (auto& t : pool) t.join();
}

// max-reduction over [0, count) with deterministic tie handling left to cmp.
template <typename Eval>
double parallel_max(std::int64_t count, const Eval& eval) {
  const std::int64_t chunk = 1 << 14;
  const std::int64_t nchunks = (count + chunk - 1) / chunk;
  std::vector<double> partial(static_cast<size_t>(nchunks),
                              -std::numeric_limits<double>::infinity());
  parallel_chunks(count, [&](std::int64_t c, std::int64_t i0, std::int64_t i1) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = i0; i < i1; ++i) m = std::max(m, eval(i));
    partial[static_cast<size_t>(c)] = m;
  });
  double m = -std::numeric_limits<double>::infinity();
  for (double p : partial) m = std::max(m, p);
  return m;
}

// ---------------------------------------------------------------------------
// Misc numerics

inline double sqr(double x) { return x * x; }

// x^(m/2) for integer m >= 0; exact sqrt/multiply chain (hot path for bubble
// fields where the exponent (n-2)/2 is a half-integer).
inline double pow_half_int(double x, int m) {
  double r = 1.0;
  if (m & 1) r = std::sqrt(x);
  double p = x;
  int k = m >> 1;
  while (k) {
    if (k & 1) r *= p;
    p *= p;
    k >>= 1;
  }
  return r;
}

inline double unit_ball_volume(int n) {
  // alpha(n) = pi^{n/2} / Gamma(n/2 + 1)
  return std::pow(3.14159265358979323846, 0.5 * n) /
         std::tgamma(0.5 * n + 1.0);
}

inline double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

// Adaptive Simpson quadrature on [a,b].
namespace detail {
template <typename F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}
template <typename F>
double adapt(const F& f, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, m, fa, flm, fm);
  double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <typename F>
double integrate_1d(const F& f, double a, double b, double tol = 1e-12,
                    int max_depth = 48) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = detail::simpson(f, a, b, fa, fm, fb);
  return detail::adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Bisection for a continuous g with g(lo) <= 0 <= g(hi) (or reversed).
template <typename G>
double bisect(const G& g, double lo, double hi, double glo, double ghi,
              int iters = 200, double width = 0.0) {
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  require(glo * ghi < 0.0, errc::no_root, "bisect: no sign change");
  for (int it = 0; it < iters && hi - lo > width; ++it) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (gm == 0.0) return mid;
    if (gm * glo < 0.0) {
      hi = mid;
      ghi = gm;
    } else {
      lo = mid;
      glo = gm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace cvt
