#include "tomo/estimate.hpp"

#include <cmath>

namespace tomo {

double Estimate::relative_error() const {
  if (value == 0.0) return std_error == 0.0 ? 0.0 : INFINITY;
  return std_error / std::abs(value);
}

Estimate pool(const Estimate& a, const Estimate& b) {
  if (a.std_error == 0.0 && b.std_error == 0.0) {
    return Estimate{0.5 * (a.value + b.value), 0.0, a.samples + b.samples};
  }
  if (a.std_error == 0.0) return a;
  if (b.std_error == 0.0) return b;
  const double wa = 1.0 / (a.std_error * a.std_error);
  const double wb = 1.0 / (b.std_error * b.std_error);
  return Estimate{(wa * a.value + wb * b.value) / (wa + wb), std::sqrt(1.0 / (wa + wb)),
                  a.samples + b.samples};
}

Estimate scaled(const Estimate& a, double c) {
  return Estimate{a.value * c, a.std_error * std::abs(c), a.samples};
}

Estimate power(const Estimate& a, double exponent) {
  const double v = std::pow(a.value, exponent);
  if (a.std_error == 0.0) return Estimate{v, 0.0, a.samples};
  const double se = std::abs(exponent) * std::abs(v) * a.relative_error();
  return Estimate{v, se, a.samples};
}

Estimate product(const Estimate& a, const Estimate& b) {
  const double v = a.value * b.value;
  double se = 0.0;
  if (a.std_error != 0.0 || b.std_error != 0.0) {
    se = std::sqrt(std::pow(a.std_error * b.value, 2) + std::pow(b.std_error * a.value, 2));
  }
  return Estimate{v, se, a.samples + b.samples};
}

Estimate quotient(const Estimate& a, const Estimate& b) {
  const double v = a.value / b.value;
  double se = 0.0;
  if (a.std_error != 0.0 || b.std_error != 0.0) {
    se = std::abs(v) * std::sqrt(std::pow(a.relative_error(), 2) + std::pow(b.relative_error(), 2));
  }
  return Estimate{v, se, a.samples + b.samples};
}

void Accumulator::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void Accumulator::merge(const Accumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  const double n = na + nb;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  count_ += other.count_;
}

double Accumulator::variance() const {
  return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

Estimate Accumulator::estimate(double scale) const {
  const double se = count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  return Estimate{scale * mean_, std::abs(scale) * se, count_};
}

}  // namespace tomo
