#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrfilt/field.hpp"
#include "rrfilt/monomial.hpp"

namespace rrfilt {

// Ambient polynomial ring: variable names, coefficient field and default
// term order. Immutable after construction; shared by reference everywhere.
class RingContext {
 public:
  RingContext(std::vector<std::string> vars, Field field,
              MonomialOrder order = MonomialOrder::degrevlex())
      : vars_(std::move(vars)), field_(field), order_(order) {
    if (vars_.empty()) throw std::invalid_argument("ring needs at least one variable");
    auto sorted = vars_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("duplicate variable name");
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Field& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }

  int var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }

  std::string name() const {
    std::string s = field_.name() + "[";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (i) s += ",";
      s += vars_[i];
    }
    return s + "]";
  }

 private:
  std::vector<std::string> vars_;
  Field field_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const RingContext>;

inline RingPtr make_ring(std::vector<std::string> vars, Field field,
                         MonomialOrder order = MonomialOrder::degrevlex()) {
  return std::make_shared<RingContext>(std::move(vars), field, order);
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a->vars() == b->vars() && a->field() == b->field());
}

}  // namespace rrfilt
