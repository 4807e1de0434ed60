#include "wigmaj/reduced_profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wigmaj/errors.hpp"
#include "wigmaj/quadrature.hpp"
#include "wigmaj/real_poly.hpp"

namespace wigmaj {
namespace detail {

// Below this value integrands are treated as zero (0 * ln 0 = 0 and no underflow).
constexpr double kValueFloor = 1e-300;
constexpr double kTailPanel = 4.0;
constexpr double kQuadTol = 1e-13;

class ProfileImpl {
 public:
  virtual ~ProfileImpl() = default;
  virtual ReducedProfile::Kind kind() const = 0;
  virtual double value(double x) const = 0;
  virtual double total_mass() const = 0;
  virtual double max_value() const = 0;
  virtual double level_measure(double t) const = 0;
  // Integral of f over {f >= t}, t > 0.
  virtual double superlevel_mass(double t) const = 0;
  virtual double support_measure() const = 0;
  virtual std::vector<double> critical_values() const = 0;
  virtual std::vector<Interval> support() const = 0;
  virtual double integrate(double a, double b) const = 0;
  // kinks: levels at which phi is not smooth.
  virtual double functional(const std::function<double(double)>& phi, std::span<const double> kinks) const = 0;

  double plus_integral(double t) const {
    if (t < 0.0) return kInfinity;
    if (t == 0.0) return total_mass();
    if (t > max_value()) return 0.0;
    return std::max(0.0, superlevel_mass(t) - t * level_measure(t));
  }

  // inf{t > 0 : m(t) <= s}, by a bracketed solve of m(t) = s in log t.
  virtual double rearranged_value(double s) const {
    if (s < 0.0) throw DomainError("rearranged_value: negative size");
    if (s >= support_measure()) return 0.0;
    const double top = max_value();
    if (!(top > 0.0)) return 0.0;
    if (level_measure(top) > s) return top;
    const double floor = top * kValueFloor;
    if (level_measure(floor) <= s) return floor;
    auto g = [this, s](double u) { return level_measure(std::exp(u)) - s; };
    const double lo = std::log(floor), hi = std::log(top);
    const double root = real_poly::bracketed_root(g, lo, hi, g(lo), g(hi));
    return std::exp(root);
  }

  // S(s) = min_t [P(t) + t s], evaluated at t = f_down(s).
  virtual double cumulative(double s) const {
    if (s <= 0.0) return 0.0;
    const double mass = total_mass();
    if (s >= support_measure()) return mass;
    const double t = rearranged_value(s);
    if (!(t > 0.0)) return mass;
    return std::min(mass, superlevel_mass(t) + t * (s - level_measure(t)));
  }
};

namespace {

double clamp_nonnegative(double v) { return v > 0.0 ? v : 0.0; }

std::vector<double> strip_zeros(std::vector<double> poly) {
  while (!poly.empty() && poly.back() == 0.0) poly.pop_back();
  return poly;
}

// D with D - D' = R, so that (-e^{-y} D(y))' = e^{-y} R(y).
std::vector<double> exp_antiderivative(const std::vector<double>& r) {
  std::vector<double> d(r.size());
  for (std::size_t j = r.size(); j-- > 0;)
    d[j] = r[j] + (j + 1 < r.size() ? static_cast<double>(j + 1) * d[j + 1] : 0.0);
  return d;
}

// Tail panels of width kTailPanel from x0 over a decreasing integrand, until
// the argument underflows or a panel no longer changes the total.
template <class Value>
double integrate_tail(const std::function<double(double)>& phi, Value f, double x0) {
  double total = 0.0;
  double a = x0;
  for (int i = 0; i < 1000; ++i) {
    const double b = a + kTailPanel;
    const double piece = quadrature::integrate([&](double x) { return phi(f(x)); }, a, b, kQuadTol);
    total += piece;
    if (f(b) < kValueFloor || std::abs(piece) <= 1e-18 * std::abs(total)) break;
    a = b;
  }
  return total;
}

struct Piece {
  double x0, x1;  // x1 may be infinite
  double v0, v1;  // values at the ends (v1 = 0 at infinity)
  std::size_t seg;
};

class ClosedFormImpl final : public ProfileImpl {
 public:
  explicit ClosedFormImpl(std::vector<ExpPolySegment> input) {
    for (auto& s : input) {
      if (!(s.start >= 0.0) || !(s.end > s.start))
        throw DomainError("ReducedProfile: segment must satisfy 0 <= start < end");
      s.poly = strip_zeros(std::move(s.poly));
    }
    std::sort(input.begin(), input.end(),
              [](const ExpPolySegment& a, const ExpPolySegment& b) { return a.start < b.start; });
    double cursor = 0.0;
    for (auto& s : input) {
      if (s.start < cursor) throw DomainError("ReducedProfile: overlapping segments");
      if (s.start > cursor) segs_.push_back({cursor, s.start, {}});
      cursor = s.end;
      segs_.push_back(std::move(s));
    }
    if (cursor < kInfinity) segs_.push_back({cursor, kInfinity, {}});

    for (const auto& s : segs_) anti_.push_back(exp_antiderivative(s.poly));
    build_pieces();
    mass_ = 0.0;
    for (std::size_t i = 0; i < segs_.size(); ++i) mass_ += integrate_segment(i, 0.0, segs_[i].end - segs_[i].start);
  }

  ReducedProfile::Kind kind() const override { return ReducedProfile::Kind::ClosedForm; }
  const std::vector<ExpPolySegment>& segments() const { return segs_; }

  double value(double x) const override {
    if (x < 0.0) return 0.0;
    const std::size_t i = segment_index(x);
    return clamp_nonnegative(local(i, x - segs_[i].start));
  }

  double total_mass() const override { return mass_; }
  double max_value() const override { return max_; }

  double level_measure(double t) const override {
    if (t <= 0.0) return kInfinity;
    double total = 0.0;
    for (const auto& p : pieces_) {
      const auto [a, b] = superlevel(p, t);
      if (b > a) total += b - a;
    }
    return total;
  }

  double superlevel_mass(double t) const override {
    double total = 0.0;
    for (const auto& p : pieces_) {
      const auto [a, b] = superlevel(p, t);
      if (b > a) total += integrate_segment(p.seg, a - segs_[p.seg].start, b - segs_[p.seg].start);
    }
    return total;
  }

  double support_measure() const override {
    double total = 0.0;
    for (const auto& s : segs_)
      if (!s.poly.empty()) total += s.end - s.start;
    return total;
  }

  std::vector<double> critical_values() const override {
    std::vector<double> out;
    for (const auto& p : pieces_) {
      if (p.v0 > 0.0) out.push_back(p.v0);
      if (p.v1 > 0.0) out.push_back(p.v1);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Interval> support() const override {
    std::vector<Interval> out;
    for (const auto& s : segs_) {
      if (s.poly.empty()) continue;
      if (!out.empty() && out.back().hi == s.start)
        out.back().hi = s.end;
      else
        out.push_back({s.start, s.end});
    }
    return out;
  }

  double integrate(double a, double b) const override {
    a = std::max(a, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const double lo = std::max(a, segs_[i].start), hi = std::min(b, segs_[i].end);
      if (hi > lo) total += integrate_segment(i, lo - segs_[i].start, hi - segs_[i].start);
    }
    return total;
  }

  double functional(const std::function<double(double)>& phi, std::span<const double> kinks) const override {
    double total = 0.0;
    for (const auto& p : pieces_) {
      const double start = segs_[p.seg].start;
      auto f = [this, &p, start](double x) { return clamp_nonnegative(local(p.seg, x - start)); };
      auto integrand = [&](double x) { return phi(f(x)); };
      std::vector<double> cuts{p.x0};
      const double lo = std::min(p.v0, p.v1), hi = std::max(p.v0, p.v1);
      for (double t : kinks)
        if (t > lo && t < hi) cuts.push_back(crossing(p, t, start));
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        total += quadrature::integrate(integrand, cuts[k], cuts[k + 1], kQuadTol);
      if (std::isfinite(p.x1))
        total += quadrature::integrate(integrand, cuts.back(), p.x1, kQuadTol);
      else
        total += integrate_tail(phi, f, cuts.back());
    }
    return total;
  }

 private:
  std::size_t segment_index(double x) const {
    auto it = std::upper_bound(segs_.begin(), segs_.end(), x,
                               [](double v, const ExpPolySegment& s) { return v < s.start; });
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - segs_.begin()) - 1));
  }

  double local(std::size_t seg, double y) const {
    const auto& poly = segs_[seg].poly;
    if (poly.empty()) return 0.0;
    return std::exp(-y) * real_poly::horner(poly, y);
  }

  double integrate_segment(std::size_t seg, double y0, double y1) const {
    const auto& d = anti_[seg];
    if (d.empty() || !(y1 > y0)) return 0.0;
    auto prim = [&d](double y) {
      return std::isfinite(y) ? -std::exp(-y) * real_poly::horner(d, y) : 0.0;
    };
    return prim(y1) - prim(y0);
  }

  void build_pieces() {
    max_ = 0.0;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const auto& s = segs_[i];
      if (s.poly.empty()) continue;
      const double len = s.end - s.start;
      // f' = e^{-y} (R' - R)
      auto q = real_poly::derivative(s.poly);
      q.resize(std::max(q.size(), s.poly.size()), 0.0);
      for (std::size_t k = 0; k < s.poly.size(); ++k) q[k] -= s.poly[k];
      const double search_hi = std::isfinite(len) ? len : real_poly::root_bound(q) + 1.0;
      std::vector<double> cuts{0.0};
      for (double r : real_poly::real_roots(q, 0.0, search_hi))
        if (r > cuts.back() && r < len) cuts.push_back(r);
      cuts.push_back(len);
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        Piece p{s.start + cuts[k], s.start + cuts[k + 1], local(i, cuts[k]),
                std::isfinite(cuts[k + 1]) ? local(i, cuts[k + 1]) : 0.0, i};
        const double scale = std::max(1.0, std::max(std::abs(p.v0), std::abs(p.v1)));
        if (p.v0 < -1e-10 * scale || p.v1 < -1e-10 * scale)
          throw DomainError("ReducedProfile: profile takes negative values");
        p.v0 = clamp_nonnegative(p.v0);
        p.v1 = clamp_nonnegative(p.v1);
        max_ = std::max({max_, p.v0, p.v1});
        pieces_.push_back(p);
      }
    }
  }

  // Sub-interval of the monotone piece where f >= t (t > 0).
  std::pair<double, double> superlevel(const Piece& p, double t) const {
    const double start = segs_[p.seg].start;
    const bool decreasing = p.v0 >= p.v1;
    if (decreasing) {
      if (t >= p.v0) return {0.0, 0.0};
      if (std::isfinite(p.x1) && t <= p.v1) return {p.x0, p.x1};
      return {p.x0, crossing(p, t, start)};
    }
    if (t >= p.v1) return {0.0, 0.0};
    if (t <= p.v0) return {p.x0, p.x1};
    return {crossing(p, t, start), p.x1};
  }

  double crossing(const Piece& p, double t, double start) const {
    if (std::isfinite(p.x1)) {
      auto g = [this, &p, start, t](double x) { return local(p.seg, x - start) - t; };
      const double g0 = g(p.x0), g1 = g(p.x1);
      if ((g0 >= 0.0) == (g1 >= 0.0)) return std::abs(g0) < std::abs(g1) ? p.x0 : p.x1;
      return real_poly::bracketed_root(g, p.x0, p.x1, g0, g1);
    }
    // Unbounded decreasing tail: solve log f(x) = log t.
    const auto& poly = segs_[p.seg].poly;
    const double log_t = std::log(t);
    auto g = [&poly, start, log_t](double x) {
      const double y = x - start;
      const double r = real_poly::horner(poly, y);
      return (r > 0.0 ? std::log(r) : -1e300) - y - log_t;
    };
    double lo = p.x0, step = 1.0, hi = p.x0 + step;
    double g_lo = g(lo), g_hi = g(hi);
    if (g_lo <= 0.0) return lo;
    while (g_hi >= 0.0) {
      lo = hi;
      g_lo = g_hi;
      step *= 2.0;
      hi = lo + step;
      g_hi = g(hi);
    }
    return real_poly::bracketed_root(g, lo, hi, g_lo, g_hi);
  }

  std::vector<ExpPolySegment> segs_;
  std::vector<std::vector<double>> anti_;
  std::vector<Piece> pieces_;
  double mass_ = 0.0;
  double max_ = 0.0;
};

class StepImpl final : public ProfileImpl {
 public:
  StepImpl(std::vector<double> xs, std::vector<double> vs) : xs_(std::move(xs)), vs_(std::move(vs)) {
    std::vector<std::size_t> order(vs_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) { return vs_[a] > vs_[b]; });
    sorted_.reserve(order.size());
    measure_.assign(1, 0.0);
    mass_.assign(1, 0.0);
    for (std::size_t i : order) {
      const double w = xs_[i + 1] - xs_[i];
      sorted_.push_back(vs_[i]);
      measure_.push_back(measure_.back() + w);
      mass_.push_back(mass_.back() + w * vs_[i]);
    }
  }

  ReducedProfile::Kind kind() const override { return ReducedProfile::Kind::Sampled; }

  double value(double x) const override {
    if (x < xs_.front() || x >= xs_.back()) return 0.0;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    return vs_[static_cast<std::size_t>(it - xs_.begin()) - 1];
  }
  double total_mass() const override { return mass_.back(); }
  double max_value() const override { return sorted_.empty() ? 0.0 : sorted_.front(); }

  double level_measure(double t) const override {
    if (t <= 0.0) return kInfinity;
    return measure_[count_at_least(t)];
  }
  double superlevel_mass(double t) const override { return mass_[count_at_least(t)]; }

  double support_measure() const override { return measure_[count_above_zero()]; }

  double rearranged_value(double s) const override {
    if (s < 0.0) throw DomainError("rearranged_value: negative size");
    auto it = std::upper_bound(measure_.begin(), measure_.end(), s);
    const auto k = static_cast<std::size_t>(it - measure_.begin()) - 1;
    return k < sorted_.size() ? sorted_[k] : 0.0;
  }

  double cumulative(double s) const override {
    if (s <= 0.0) return 0.0;
    auto it = std::upper_bound(measure_.begin(), measure_.end(), s);
    const auto k = static_cast<std::size_t>(it - measure_.begin()) - 1;
    if (k >= sorted_.size()) return mass_.back();
    return mass_[k] + (s - measure_[k]) * sorted_[k];
  }

  std::vector<double> critical_values() const override {
    if (sorted_.empty() || !(sorted_.front() > 0.0)) return {};
    return {sorted_.front()};
  }

  std::vector<Interval> support() const override {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < vs_.size(); ++i) {
      if (!(vs_[i] > 0.0)) continue;
      if (!out.empty() && out.back().hi == xs_[i])
        out.back().hi = xs_[i + 1];
      else
        out.push_back({xs_[i], xs_[i + 1]});
    }
    return out;
  }

  double integrate(double a, double b) const override {
    double total = 0.0;
    for (std::size_t i = 0; i < vs_.size(); ++i) {
      const double lo = std::max(a, xs_[i]), hi = std::min(b, xs_[i + 1]);
      if (hi > lo) total += (hi - lo) * vs_[i];
    }
    return total;
  }

  double functional(const std::function<double(double)>& phi, std::span<const double>) const override {
    double total = 0.0;
    for (std::size_t i = 0; i < vs_.size(); ++i) total += (xs_[i + 1] - xs_[i]) * phi(vs_[i]);
    return total;
  }

  const std::vector<double>& breakpoints() const { return xs_; }
  const std::vector<double>& values() const { return vs_; }

 private:
  std::size_t count_at_least(double t) const {
    return static_cast<std::size_t>(
        std::partition_point(sorted_.begin(), sorted_.end(), [t](double v) { return v >= t; }) - sorted_.begin());
  }
  std::size_t count_above_zero() const {
    return static_cast<std::size_t>(
        std::partition_point(sorted_.begin(), sorted_.end(), [](double v) { return v > 0.0; }) - sorted_.begin());
  }

  std::vector<double> xs_, vs_;
  std::vector<double> sorted_, measure_, mass_;
};

class LinearImpl final : public ProfileImpl {
 public:
  LinearImpl(std::vector<double> xs, std::vector<double> vs) : xs_(std::move(xs)), vs_(std::move(vs)) {
    mass_ = 0.0;
    max_ = 0.0;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) mass_ += 0.5 * (vs_[i] + vs_[i + 1]) * (xs_[i + 1] - xs_[i]);
    for (double v : vs_) max_ = std::max(max_, v);
  }

  ReducedProfile::Kind kind() const override { return ReducedProfile::Kind::Sampled; }

  double value(double x) const override {
    if (x < xs_.front() || x > xs_.back()) return 0.0;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.end()) return vs_.back();
    const auto i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    const double w = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
    return vs_[i] + w * (vs_[i + 1] - vs_[i]);
  }
  double total_mass() const override { return mass_; }
  double max_value() const override { return max_; }

  double level_measure(double t) const override {
    if (t <= 0.0) return kInfinity;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
      const auto [a, b] = superlevel(i, t);
      total += b - a;
    }
    return total;
  }

  double superlevel_mass(double t) const override {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
      const auto [a, b] = superlevel(i, t);
      if (b > a) total += 0.5 * (value_in(i, a) + value_in(i, b)) * (b - a);
    }
    return total;
  }

  double support_measure() const override {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
      if (vs_[i] > 0.0 || vs_[i + 1] > 0.0) total += xs_[i + 1] - xs_[i];
    return total;
  }

  std::vector<double> critical_values() const override {
    std::vector<double> out;
    for (std::size_t i = 0; i < vs_.size(); ++i) {
      const bool end = (i == 0 || i + 1 == vs_.size());
      const bool extremum = !end && ((vs_[i] - vs_[i - 1]) * (vs_[i + 1] - vs_[i]) <= 0.0);
      if ((end || extremum) && vs_[i] > 0.0) out.push_back(vs_[i]);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Interval> support() const override {
    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
      if (!(vs_[i] > 0.0 || vs_[i + 1] > 0.0)) continue;
      if (!out.empty() && out.back().hi == xs_[i])
        out.back().hi = xs_[i + 1];
      else
        out.push_back({xs_[i], xs_[i + 1]});
    }
    return out;
  }

  double integrate(double a, double b) const override {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
      const double lo = std::max(a, xs_[i]), hi = std::min(b, xs_[i + 1]);
      if (hi > lo) total += 0.5 * (value_in(i, lo) + value_in(i, hi)) * (hi - lo);
    }
    return total;
  }

  double functional(const std::function<double(double)>& phi, std::span<const double> kinks) const override {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
      const double va = vs_[i], vb = vs_[i + 1];
      std::vector<double> cuts{xs_[i]};
      for (double t : kinks)
        if (t > std::min(va, vb) && t < std::max(va, vb))
          cuts.push_back(xs_[i] + (t - va) / (vb - va) * (xs_[i + 1] - xs_[i]));
      std::sort(cuts.begin(), cuts.end());
      cuts.push_back(xs_[i + 1]);
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        total += quadrature::integrate([&](double x) { return phi(value_in(i, x)); }, cuts[k], cuts[k + 1], kQuadTol);
    }
    return total;
  }

 private:
  double value_in(std::size_t i, double x) const {
    const double w = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
    return vs_[i] + w * (vs_[i + 1] - vs_[i]);
  }

  std::pair<double, double> superlevel(std::size_t i, double t) const {
    const double a = xs_[i], b = xs_[i + 1], va = vs_[i], vb = vs_[i + 1];
    if (va >= t && vb >= t) return {a, b};
    if (va < t && vb < t) return {a, a};
    const double cross = a + (t - va) / (vb - va) * (b - a);
    return va >= t ? std::pair{a, cross} : std::pair{cross, b};
  }

  std::vector<double> xs_, vs_;
  double mass_ = 0.0, max_ = 0.0;
};

class RearrangedImpl final : public ProfileImpl {
 public:
  explicit RearrangedImpl(std::shared_ptr<const ProfileImpl> source) : src_(std::move(source)) {}

  ReducedProfile::Kind kind() const override { return ReducedProfile::Kind::Rearranged; }
  double value(double s) const override { return s < 0.0 ? 0.0 : src_->rearranged_value(s); }
  double total_mass() const override { return src_->total_mass(); }
  double max_value() const override { return src_->max_value(); }
  double level_measure(double t) const override { return src_->level_measure(t); }
  double superlevel_mass(double t) const override { return src_->superlevel_mass(t); }
  double support_measure() const override { return src_->support_measure(); }
  std::vector<double> critical_values() const override { return src_->critical_values(); }
  std::vector<Interval> support() const override {
    const double m = support_measure();
    if (!(m > 0.0)) return {};
    return {{0.0, m}};
  }
  double rearranged_value(double s) const override { return src_->rearranged_value(s); }
  double cumulative(double s) const override { return src_->cumulative(s); }
  double integrate(double a, double b) const override {
    return src_->cumulative(std::max(b, 0.0)) - src_->cumulative(std::max(a, 0.0));
  }

  // Equimeasurable with the source.
  double functional(const std::function<double(double)>& phi, std::span<const double> kinks) const override {
    return src_->functional(phi, kinks);
  }

 private:
  std::shared_ptr<const ProfileImpl> src_;
};

const ClosedFormImpl& closed_form(const std::shared_ptr<const ProfileImpl>& impl, const char* what) {
  const auto* cf = dynamic_cast<const ClosedFormImpl*>(impl.get());
  if (cf == nullptr)
    throw RepresentationError(std::string(what) + ": requires a closed-form profile");
  return *cf;
}

std::vector<double> reexpress(const std::vector<ExpPolySegment>& segs, double at) {
  for (const auto& s : segs) {
    if (at >= s.start && at < s.end) {
      if (s.poly.empty()) return {};
      const double dy = at - s.start;
      auto q = real_poly::taylor_shift(s.poly, dy);
      const double scale = std::exp(-dy);
      for (double& c : q) c *= scale;
      return q;
    }
  }
  return {};
}

}  // namespace
}  // namespace detail

ReducedProfile ReducedProfile::exp_poly(std::vector<double> coeffs) {
  return from_segments({{0.0, kInfinity, std::move(coeffs)}});
}

ReducedProfile ReducedProfile::from_segments(std::vector<ExpPolySegment> segments) {
  return ReducedProfile(std::make_shared<detail::ClosedFormImpl>(std::move(segments)));
}

ReducedProfile ReducedProfile::sampled(std::vector<double> breakpoints, std::vector<double> values,
                                       Interpolation interpolation) {
  if (breakpoints.size() < 2) throw DomainError("ReducedProfile::sampled: need at least two breakpoints");
  if (!(breakpoints.front() >= 0.0)) throw DomainError("ReducedProfile::sampled: negative abscissa");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i + 1] > breakpoints[i]))
      throw DomainError("ReducedProfile::sampled: breakpoints must be strictly ascending");
  for (double v : values)
    if (!(v >= 0.0)) throw DomainError("ReducedProfile::sampled: negative value");
  const std::size_t expected = breakpoints.size() - (interpolation == Interpolation::Step ? 1 : 0);
  if (values.size() != expected) throw DomainError("ReducedProfile::sampled: value count mismatch");
  if (interpolation == Interpolation::Step)
    return ReducedProfile(std::make_shared<detail::StepImpl>(std::move(breakpoints), std::move(values)));
  return ReducedProfile(std::make_shared<detail::LinearImpl>(std::move(breakpoints), std::move(values)));
}

ReducedProfile ReducedProfile::rearrangement_of(const ReducedProfile& source) {
  if (source.kind() == Kind::Rearranged) return source;
  return ReducedProfile(std::make_shared<detail::RearrangedImpl>(source.impl_));
}

ReducedProfile::Kind ReducedProfile::kind() const { return impl_->kind(); }
double ReducedProfile::operator()(double x) const { return impl_->value(x); }
double ReducedProfile::total_mass() const { return impl_->total_mass(); }
double ReducedProfile::max_value() const { return impl_->max_value(); }
double ReducedProfile::level_measure(double t) const { return impl_->level_measure(t); }
double ReducedProfile::plus_integral(double t) const { return impl_->plus_integral(t); }
double ReducedProfile::cumulative(double s) const { return impl_->cumulative(s); }
double ReducedProfile::rearranged_value(double s) const { return impl_->rearranged_value(s); }
double ReducedProfile::support_measure() const { return impl_->support_measure(); }
std::vector<double> ReducedProfile::critical_values() const { return impl_->critical_values(); }
std::vector<Interval> ReducedProfile::support() const { return impl_->support(); }
double ReducedProfile::integrate(double a, double b) const { return impl_->integrate(a, b); }
double ReducedProfile::functional(const std::function<double(double)>& phi, std::span<const double> kinks) const {
  return impl_->functional(phi, kinks);
}

std::span<const ExpPolySegment> ReducedProfile::segments() const {
  return detail::closed_form(impl_, "segments").segments();
}

ReducedProfile ReducedProfile::shifted(double alpha) const {
  if (!(alpha >= 0.0)) throw DomainError("shifted: shift must be non-negative");
  if (const auto* step = dynamic_cast<const detail::StepImpl*>(impl_.get())) {
    auto xs = step->breakpoints();
    for (double& x : xs) x += alpha;
    return sampled(std::move(xs), step->values(), Interpolation::Step);
  }
  if (kind() == Kind::Sampled) throw RepresentationError("shifted: linear sampled profiles are not supported");
  const auto& cf = detail::closed_form(impl_, "shifted");
  std::vector<ExpPolySegment> out;
  for (const auto& s : cf.segments()) {
    if (s.poly.empty()) continue;
    out.push_back({s.start + alpha, s.end + alpha, s.poly});
  }
  return from_segments(std::move(out));
}

ReducedProfile ReducedProfile::scaled(double factor) const {
  if (!(factor >= 0.0)) throw DomainError("scaled: factor must be non-negative");
  const auto& cf = detail::closed_form(impl_, "scaled");
  std::vector<ExpPolySegment> out;
  for (const auto& s : cf.segments()) {
    if (s.poly.empty()) continue;
    ExpPolySegment scaled_seg = s;
    for (double& c : scaled_seg.poly) c *= factor;
    out.push_back(std::move(scaled_seg));
  }
  return from_segments(std::move(out));
}

ReducedProfile ReducedProfile::truncated(double lo, double hi) const {
  if (!(lo >= 0.0) || !(hi > lo)) throw DomainError("truncated: need 0 <= lo < hi");
  const auto& cf = detail::closed_form(impl_, "truncated");
  std::vector<ExpPolySegment> out;
  for (const auto& s : cf.segments()) {
    const double a = std::max(lo, s.start), b = std::min(hi, s.end);
    if (!(b > a) || s.poly.empty()) continue;
    out.push_back({a, b, detail::reexpress(cf.segments(), a)});
  }
  return from_segments(std::move(out));
}

ReducedProfile operator+(const ReducedProfile& a, const ReducedProfile& b) {
  const auto& ca = detail::closed_form(a.impl_, "operator+");
  const auto& cb = detail::closed_form(b.impl_, "operator+");
  std::vector<double> cuts;
  for (const auto* cf : {&ca, &cb})
    for (const auto& s : cf->segments()) cuts.push_back(s.start);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(kInfinity);
  std::vector<ExpPolySegment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto pa = detail::reexpress(ca.segments(), cuts[i]);
    const auto pb = detail::reexpress(cb.segments(), cuts[i]);
    pa.resize(std::max(pa.size(), pb.size()), 0.0);
    for (std::size_t k = 0; k < pb.size(); ++k) pa[k] += pb[k];
    if (std::all_of(pa.begin(), pa.end(), [](double c) { return c == 0.0; })) continue;
    out.push_back({cuts[i], cuts[i + 1], std::move(pa)});
  }
  return ReducedProfile::from_segments(std::move(out));
}

ReducedProfile mix(double lambda, const ReducedProfile& a, const ReducedProfile& b) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("mix: weight outside [0,1]");
  if (lambda == 1.0) return a.scaled(1.0);
  if (lambda == 0.0) return b.scaled(1.0);
  return a.scaled(lambda) + b.scaled(1.0 - lambda);
}

}  // namespace wigmaj
