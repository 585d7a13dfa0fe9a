// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/generators.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <cmath>
#include <fstream>

#include "rinorm/numeric.hpp"
#include "rinorm/special.hpp"

namespace rinorm {

namespace {

constexpr long double kHalfLogPi = 0.572364942924700087071713675676529356L;

class PowerModel final : public GeneratorModel {
 public:
  explicit PowerModel(double alpha) : alpha_(alpha) {}
  double value(double t) const override { return std::pow(std::min(t, 1.0), alpha_); }
  long double log_value(long double log_t) const override {
    return alpha_ * std::min(log_t, 0.0L);
  }
  long double elasticity(long double log_t) const override { return log_t > 0 ? 0.0L : alpha_; }

 private:
  long double alpha_;
};

class LogPowModel final : public GeneratorModel {
 public:
  explicit LogPowModel(double p) : inv_p_(1.0L / p) {}
  double value(double t) const override {
    t = std::min(t, 1.0);
    return t * std::pow(1.0 - std::log(t), static_cast<double>(inv_p_));
  }
  long double log_value(long double log_t) const override {
    log_t = std::min(log_t, 0.0L);
    return log_t + inv_p_ * std::log1p(-log_t);
  }
  long double elasticity(long double log_t) const override {
    if (log_t > 0) return 0.0L;
    return 1.0L - inv_p_ / (1.0L - log_t);
  }

 private:
  long double inv_p_;
};

class Example7Model final : public GeneratorModel {
 public:
  // Junction at t0 = e^{-3/2}: value (3/2)^{-1/2}, slope (1/2)(3/2)^{-3/2} e^{3/2}.
  static constexpr long double kLogT0 = -1.5L;

  Example7Model()
      : t0_(std::exp(kLogT0)),
        a_(1.0L / std::sqrt(1.5L)),
        slope_(0.5L * std::pow(1.5L, -1.5L) * std::exp(1.5L)) {}

  double value(double t) const override {
    t = std::min(t, 1.0);
    if (t <= 0.0) return 0.0;
    return static_cast<double>(std::exp(log_value(std::log(static_cast<long double>(t)))));
  }
  long double log_value(long double log_t) const override {
    log_t = std::min(log_t, 0.0L);
    if (log_t <= kLogT0) return -0.5L * std::log(-log_t);
    return std::log(a_ + slope_ * (std::exp(log_t) - t0_));
  }
  long double elasticity(long double log_t) const override {
    if (log_t > 0) return 0.0L;
    if (log_t <= kLogT0) return 0.5L / -log_t;
    const long double t = std::exp(log_t);
    return slope_ * t / (a_ + slope_ * (t - t0_));
  }

 private:
  long double t0_;
  long double a_;
  long double slope_;
};

class GaussModel final : public GeneratorModel {
 public:
  double value(double t) const override {
    t = std::min(t, 1.0);
    if (t <= 0.0) return 0.0;
    return static_cast<double>(std::exp(log_value(std::log(static_cast<long double>(t)))));
  }
  long double log_value(long double log_t) const override {
    const long double g = special::erfc_inv_log(std::min(log_t, 0.0L));
    return -g * g - kHalfLogPi;
  }
  long double elasticity(long double log_t) const override {
    if (log_t >= 0) return 0.0L;
    const long double g = special::erfc_inv_log(log_t);
    // t G(t) / ψ(t) with ψ = exp(-G^2)/sqrt(pi)
    return std::exp(log_t + std::log(g) + g * g + kHalfLogPi);
  }
};

class TableModel final : public GeneratorModel {
 public:
  explicit TableModel(std::vector<std::pair<double, double>> pts) {
    t_.push_back(0.0);
    v_.push_back(0.0);
    for (const auto& [t, v] : pts) {
      t_.push_back(t);
      v_.push_back(v);
    }
    for (std::size_t i = 1; i < t_.size(); ++i)
      slope_.push_back((v_[i] - v_[i - 1]) / (t_[i] - t_[i - 1]));
  }

  double value(double t) const override {
    t = std::min(t, 1.0);
    if (t <= 0.0) return 0.0;
    const std::size_t i = segment(t);
    return v_[i] + slope_[i] * (t - t_[i]);
  }
  long double log_value(long double log_t) const override {
    log_t = std::min(log_t, 0.0L);
    // Below the first knot ψ is linear through the origin; stay in logs there.
    if (log_t < std::log(static_cast<long double>(t_[1])))
      return std::log(static_cast<long double>(slope_[0])) + log_t;
    return std::log(static_cast<long double>(value(static_cast<double>(std::exp(log_t)))));
  }
  long double elasticity(long double log_t) const override {
    if (log_t > 0) return 0.0L;
    if (log_t < std::log(static_cast<long double>(t_[1]))) return 1.0L;
    const double t = static_cast<double>(std::exp(log_t));
    return slope_[segment(t)] * t / value(t);
  }

 private:
  std::size_t segment(double t) const {
    auto it = std::lower_bound(t_.begin() + 1, t_.end(), t);
    if (it == t_.end()) --it;
    return static_cast<std::size_t>(it - t_.begin()) - 1;
  }

  std::vector<double> t_;
  std::vector<double> v_;
  std::vector<double> slope_;
};

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

ConcaveGenerator::ConcaveGenerator(std::string label, std::shared_ptr<const GeneratorModel> model)
    : label_(std::move(label)), model_(std::move(model)) {
  if (!model_) throw InvalidArgument("ConcaveGenerator needs a model");
}

double ConcaveGenerator::operator()(double t) const {
  if (std::isnan(t) || t < 0.0) throw InvalidArgument("generator argument must be >= 0");
  if (t == 0.0) return 0.0;
  return model_->value(t);
}

long double ConcaveGenerator::log_value(long double log_t) const {
  if (log_t == -std::numeric_limits<long double>::infinity())
    return -std::numeric_limits<long double>::infinity();
  return model_->log_value(log_t);
}

long double ConcaveGenerator::elasticity(long double log_t) const {
  return model_->elasticity(log_t);
}

double ConcaveGenerator::derivative(double t) const {
  if (!(t > 0.0)) throw InvalidArgument("derivative needs t > 0");
  const long double lt = std::log(static_cast<long double>(t));
  return static_cast<double>(model_->elasticity(lt) * std::exp(model_->log_value(lt)) / t);
}

namespace generators {

ConcaveGenerator power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("power generator needs 0 < alpha <= 1");
  return {"power:" + format_double(alpha), std::make_shared<PowerModel>(alpha)};
}

ConcaveGenerator logpow(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("logpow generator needs p >= 1");
  return {"logpow:" + format_double(p), std::make_shared<LogPowModel>(p)};
}

ConcaveGenerator example7() { return {"example7", std::make_shared<Example7Model>()}; }

ConcaveGenerator gauss() { return {"gauss", std::make_shared<GaussModel>()}; }

ConcaveGenerator table(std::vector<std::pair<double, double>> points, std::string label) {
  if (points.empty()) throw InvalidArgument("table generator needs at least one point");
  std::sort(points.begin(), points.end());
  if (points.back().first != 1.0) throw InvalidArgument("table generator must end at t = 1");
  double prev_t = 0.0;
  double prev_v = 0.0;
  double prev_slope = std::numeric_limits<double>::infinity();
  for (const auto& [t, v] : points) {
    if (!(t > prev_t)) throw InvalidArgument("table generator abscissae must be distinct and in (0, 1]");
    if (!(v > prev_v)) throw InvalidArgument("table generator must be strictly increasing");
    const double slope = (v - prev_v) / (t - prev_t);
    if (slope > prev_slope * (1.0 + 1e-12))
      throw InvalidArgument("table generator is not concave at t = " + format_double(t));
    prev_slope = slope;
    prev_t = t;
    prev_v = v;
  }
  return {std::move(label), std::make_shared<TableModel>(std::move(points))};
}

ConcaveGenerator table_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open generator table '" + path + "'");
  std::vector<std::pair<double, double>> pts;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto comma = l.find(',');
    if (comma == std::string::npos) throw InvalidArgument("generator table row without comma: '" + l + "'");
    if (first && !std::isdigit(static_cast<unsigned char>(l.front())) && l.front() != '.') {
      first = false;
      continue;  // header
    }
    first = false;
    pts.emplace_back(parse_double(l.substr(0, comma), path), parse_double(l.substr(comma + 1), path));
  }
  return table(std::move(pts), "table:" + path);
}

ConcaveGenerator parse(std::string_view dsl) {
  const std::string text = trim(dsl);
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw InvalidArgument("generator '" + head + "' needs a parameter");
  };
  auto no_arg = [&] {
    if (colon != std::string::npos) throw InvalidArgument("generator '" + head + "' takes no parameter");
  };
  if (head == "power") {
    need_arg();
    return power(parse_double(arg, "power generator"));
  }
  if (head == "logpow") {
    need_arg();
    return logpow(parse_double(arg, "logpow generator"));
  }
  if (head == "example7") {
    no_arg();
    return example7();
  }
  if (head == "gauss") {
    no_arg();
    return gauss();
  }
  if (head == "table") {
    need_arg();
    return table_from_csv(arg);
  }
  throw InvalidArgument("unknown generator token '" + head + "'");
}

}  // namespace generators

double gauss_quantile(double t) { return static_cast<double>(special::erfc_inv(t)); }

GeneratorCheck check_generator(const ConcaveGenerator& psi, int max_depth, double tolerance) {
  GeneratorCheck out;
  auto fail = [&](bool& flag, const std::string& what) {
    if (flag) out.detail += what + "; ";
    flag = false;
  };

  std::vector<double> grid;
  for (int j = max_depth; j >= 0; --j) grid.push_back(std::ldexp(1.0, -j));
  std::vector<double> vals;
  for (double t : grid) vals.push_back(psi(t));

  // Values on the deep end must be small compared with ψ(1); the log-space
  // evaluation checks the limit much further out.
  const long double deep = psi.log_value(-1.0e9L);
  if (!(deep < std::log(1e-3L) + psi.log_value(0.0L)) || !(vals.front() < vals.back()))
    fail(out.vanishes_at_zero, "psi does not tend to 0 at 0");

  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(vals[i] > vals[i - 1]))
      fail(out.increasing, "not increasing at t = " + format_double(grid[i]));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = psi(0.5 * (grid[i] + grid[j]));
      if (mid < 0.5 * (vals[i] + vals[j]) - tolerance * std::max(1.0, mid))
        fail(out.concave, "midpoint concavity fails on [" + format_double(grid[i]) + ", " +
                              format_double(grid[j]) + "]");
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int m : {2, 3, 5, 10, 1000}) {
      if (psi(grid[i] / m) < vals[i] / m - tolerance * vals[i])
        fail(out.sublinear, "psi(u/m) < psi(u)/m at u = " + format_double(grid[i]));
    }
  }
  return out;
}

}  // namespace rinorm
