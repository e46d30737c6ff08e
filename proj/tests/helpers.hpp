#pragma once

#include <random>
#include <string>

#include "cdp/formula.hpp"

namespace cdp::testing {

// steps 105..132 of the bundled 25-step derivation, where they matter to
// individual checks
inline constexpr const char* kXcb = "e(x,e(e(e(x,y),e(z,y)),z))";
inline constexpr const char* kClause105 =
    "e(e(e(e(x,e(e(e(x,y),e(z,y)),z)),u),e(v,u)),v)";
inline constexpr const char* kClause115 =
    "e(e(e(e(e(x,e(y,e(e(e(e(e(z,e(e(e(z,u),e(v,u)),v)),e(e(w,e(e(e(w,v6),"
    "e(v7,v6)),v7)),y)),v8),e(v9,v8)),v9))),x),v10),e(v11,v10)),v11)";
inline constexpr const char* kClause119 =
    "e(e(e(e(e(e(x,e(e(y,e(e(e(y,z),e(u,z)),u)),x)),e(v,e(e(e(v,w),e(v6,w)),"
    "v6))),v7),v8),e(v7,v8)),e(v9,e(e(e(v9,v10),e(v11,v10)),v11)))";
inline constexpr const char* kClause120 =
    "e(e(e(x,e(y,e(e(e(y,z),e(u,z)),u))),v),e(x,v))";
inline constexpr const char* kClause123 = "e(e(e(e(x,y),e(z,y)),z),x)";

inline Formula fml(const char* text) { return parse_formula(text); }

// random e-formulas over a small variable pool
class RandomFormulas {
 public:
  explicit RandomFormulas(std::uint64_t seed, int max_depth = 4,
                          int var_pool = 4)
      : rng_(seed), max_depth_(max_depth), var_pool_(var_pool) {}

  Formula next() { return gen(0); }

  std::mt19937_64& rng() { return rng_; }

 private:
  Formula gen(int depth) {
    std::uniform_int_distribution<int> coin(0, 99);
    bool leaf = depth >= max_depth_ || coin(rng_) < 35;
    if (leaf) {
      std::uniform_int_distribution<int> pick(0, var_pool_ - 1);
      std::string name(1, static_cast<char>('a' + pick(rng_)));
      return Formula::variable(Names::intern(name));
    }
    Formula args[2] = {gen(depth + 1), gen(depth + 1)};
    return Formula::compound(Symbols::equiv, args);
  }

  std::mt19937_64 rng_;
  int max_depth_;
  int var_pool_;
};

}  // namespace cdp::testing
