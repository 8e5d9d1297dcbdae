#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <json.hpp>

namespace netvuln {

enum class RuleKind { Affine, LClass, CClass };

// An attachment rule f: N0 -> (0,inf) mapping a vertex's indegree to its
// rate of attracting new edges. Affine rules are f(k) = gamma*k + beta.
// General rules carry a finite table up to some k and continue with the
// affine tail gamma*k + tail_intercept beyond it, which keeps the
// asymptotic slope well defined. Rules are immutable values.
class AttachmentRule {
  public:
    static AttachmentRule affine(double gamma, double beta);
    static AttachmentRule l_class(double gamma, std::vector<double> table,
                                  double tail_intercept, double beta_lower,
                                  double beta_upper);
    static AttachmentRule c_class(double gamma, std::vector<double> table,
                                  double tail_intercept);
    // Tabulates fn on [0, k_table] and attaches the affine tail that keeps
    // the function concave at the junction.
    static AttachmentRule c_class_from(const std::function<double(std::uint64_t)>& fn,
                                       double gamma, std::uint64_t k_table);

    double operator()(std::uint64_t k) const {
        return k < table_.size() ? table_[k]
                                 : gamma_ * static_cast<double>(k) + tail_intercept_;
    }

    RuleKind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    // affine intercept; for general rules the tail intercept
    double beta() const { return tail_intercept_; }
    double beta_lower() const { return beta_lower_; }
    double beta_upper() const { return beta_upper_; }
    std::uint64_t table_size() const { return table_.size(); }

    bool pointwise_leq(const AttachmentRule& other, std::uint64_t probe_max = 1000000) const;
    bool non_decreasing(std::uint64_t probe_max = 1000000) const;

    nlohmann::json to_json() const;
    static AttachmentRule from_json(const nlohmann::json& j);

  private:
    AttachmentRule(RuleKind kind, double gamma, std::vector<double> table,
                   double tail_intercept, double beta_lower = 0.0,
                   double beta_upper = 0.0);

    RuleKind kind_;
    double gamma_;
    std::vector<double> table_;      // empty for affine rules
    double tail_intercept_;          // == beta for affine rules
    double beta_lower_ = 0.0;        // L-class only
    double beta_upper_ = 0.0;        // L-class only
};

struct SandwichBounds {
    AttachmentRule lower;
    AttachmentRule upper;
};

// Affine lower/upper bounds around a non-linear rule. For C-class rules the
// upper bound at pivot j has slope f(j+1)-f(j) and touches f at j; the lower
// bound is gamma*k + f(0). L-class rules use their defining band.
SandwichBounds affine_sandwich(const AttachmentRule& rule, std::uint64_t pivot);

// Degree power-law exponent tau = (gamma+1)/gamma of the undamaged network.
double power_law_exponent(const AttachmentRule& rule);

}  // namespace netvuln
