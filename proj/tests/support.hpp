#pragma once

#include "su11/gaussian.hpp"
#include "su11/transforms.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

namespace su11::testing {

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Reseeded from the running test's name so draws do not depend on test order.
inline std::mt19937_64& rng() {
  static std::mt19937_64 engine;
  static const ::testing::TestInfo* seeded_for = nullptr;
  const ::testing::TestInfo* info = ::testing::UnitTest::GetInstance()->current_test_info();
  if (info != seeded_for) {
    seeded_for = info;
    std::string name = info ? std::string(info->test_suite_name()) + "." + info->name() : "";
    std::seed_seq seq(name.begin(), name.end());
    engine.seed(seq);
  }
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline InputState random_input(bool displaced_b = false) {
  InputState in;
  in.alpha_mag = uniform(0.0, 1.5);
  in.theta_alpha = uniform(-3.0, 3.0);
  in.r = uniform(0.0, 0.8);
  in.theta_s = uniform(-3.0, 3.0);
  if (displaced_b) in.b_displacement = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
  return in;
}

template <typename A, typename B>
double max_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace su11::testing
