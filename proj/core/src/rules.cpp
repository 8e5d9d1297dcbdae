#include "netvuln/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netvuln/errors.hpp"

namespace netvuln {
namespace {

void check_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw GammaRangeError("attachment rule requires 0 <= gamma < 1");
}

}  // namespace

AttachmentRule::AttachmentRule(RuleKind kind, double gamma, std::vector<double> table,
                               double tail_intercept, double beta_lower, double beta_upper)
    : kind_(kind),
      gamma_(gamma),
      table_(std::move(table)),
      tail_intercept_(tail_intercept),
      beta_lower_(beta_lower),
      beta_upper_(beta_upper) {
    check_gamma(gamma_);
    if (!(tail_intercept_ > 0.0))
        throw Error("attachment rule tail intercept must be positive");
    for (double v : table_)
        if (!(v > 0.0)) throw Error("attachment rule values must be positive");

    if (kind_ == RuleKind::LClass) {
        if (!(beta_lower_ > 0.0 && beta_lower_ <= beta_upper_))
            throw Error("L-class rule requires 0 < beta_lower <= beta_upper");
        if (tail_intercept_ < beta_lower_ || tail_intercept_ > beta_upper_)
            throw Error("L-class tail intercept must lie in [beta_lower, beta_upper]");
        for (std::size_t k = 0; k < table_.size(); ++k) {
            const double base = gamma_ * static_cast<double>(k);
            if (table_[k] < base + beta_lower_ - 1e-12 ||
                table_[k] > base + beta_upper_ + 1e-12)
                throw Error("L-class rule leaves its affine band");
        }
    }
    if (kind_ == RuleKind::CClass) {
        // concavity and slope >= gamma across the table and into the tail
        double prev_inc = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k + 1 <= table_.size(); ++k) {
            const double next =
                k + 1 < table_.size()
                    ? table_[k + 1]
                    : gamma_ * static_cast<double>(k + 1) + tail_intercept_;
            const double inc = next - (*this)(k);
            if (inc > prev_inc + 1e-12)
                throw Error("C-class rule must have non-increasing increments");
            if (inc < gamma_ - 1e-12)
                throw Error("C-class rule increments must stay >= gamma");
            if (inc < -1e-12) throw Error("C-class rule must be non-decreasing");
            prev_inc = inc;
        }
    }
}

AttachmentRule AttachmentRule::affine(double gamma, double beta) {
    return AttachmentRule(RuleKind::Affine, gamma, {}, beta, 0.0, 0.0);
}

AttachmentRule AttachmentRule::l_class(double gamma, std::vector<double> table,
                                       double tail_intercept, double beta_lower,
                                       double beta_upper) {
    return AttachmentRule(RuleKind::LClass, gamma, std::move(table), tail_intercept,
                          beta_lower, beta_upper);
}

AttachmentRule AttachmentRule::c_class(double gamma, std::vector<double> table,
                                       double tail_intercept) {
    return AttachmentRule(RuleKind::CClass, gamma, std::move(table), tail_intercept);
}

AttachmentRule AttachmentRule::c_class_from(const std::function<double(std::uint64_t)>& fn,
                                            double gamma, std::uint64_t k_table) {
    std::vector<double> table(k_table + 1);
    for (std::uint64_t k = 0; k <= k_table; ++k) table[k] = fn(k);
    // continuing with slope exactly gamma keeps increments non-increasing
    const double intercept = table.back() - gamma * static_cast<double>(k_table);
    return c_class(gamma, std::move(table), intercept);
}

bool AttachmentRule::pointwise_leq(const AttachmentRule& other,
                                   std::uint64_t probe_max) const {
    const std::uint64_t join = std::max(table_.size(), other.table_.size());
    // beyond both tables the rules are affine; comparing at the junction and
    // at probe_max settles the tail
    const std::uint64_t dense_end = std::min(probe_max, join + 1);
    for (std::uint64_t k = 0; k <= dense_end; ++k)
        if ((*this)(k) > other(k) + 1e-12) return false;
    return (*this)(probe_max) <= other(probe_max) + 1e-12;
}

bool AttachmentRule::non_decreasing(std::uint64_t probe_max) const {
    const std::uint64_t dense_end =
        std::min<std::uint64_t>(probe_max, table_.size() + 1);
    for (std::uint64_t k = 0; k + 1 <= dense_end; ++k)
        if ((*this)(k + 1) < (*this)(k) - 1e-12) return false;
    return true;  // affine tail is non-decreasing since gamma >= 0
}

nlohmann::json AttachmentRule::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case RuleKind::Affine:
            j["kind"] = "affine";
            j["gamma"] = gamma_;
            j["beta"] = tail_intercept_;
            break;
        case RuleKind::CClass:
            j["kind"] = "cclass";
            j["gamma"] = gamma_;
            j["table"] = table_;
            j["tail_intercept"] = tail_intercept_;
            break;
        case RuleKind::LClass:
            j["kind"] = "lclass";
            j["gamma"] = gamma_;
            j["table"] = table_;
            j["tail_intercept"] = tail_intercept_;
            j["beta_lower"] = beta_lower_;
            j["beta_upper"] = beta_upper_;
            break;
    }
    return j;
}

AttachmentRule AttachmentRule::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double gamma = j.at("gamma").get<double>();
    if (kind == "affine") return affine(gamma, j.at("beta").get<double>());
    auto table = j.at("table").get<std::vector<double>>();
    const double tail = j.at("tail_intercept").get<double>();
    if (kind == "cclass") return c_class(gamma, std::move(table), tail);
    if (kind == "lclass")
        return l_class(gamma, std::move(table), tail, j.at("beta_lower").get<double>(),
                       j.at("beta_upper").get<double>());
    throw ConfigError("rule kind must be one of affine|cclass|lclass, got '" + kind + "'");
}

SandwichBounds affine_sandwich(const AttachmentRule& rule, std::uint64_t pivot) {
    switch (rule.kind()) {
        case RuleKind::Affine:
            throw AffineRuleError("affine_sandwich called on an affine rule");
        case RuleKind::LClass:
            return {AttachmentRule::affine(rule.gamma(), rule.beta_lower()),
                    AttachmentRule::affine(rule.gamma(), rule.beta_upper())};
        case RuleKind::CClass: {
            const double slope = rule(pivot + 1) - rule(pivot);
            if (!(slope < 1.0))
                throw GammaRangeError(
                    "C-class sandwich pivot too small: upper slope would reach 1");
            const double intercept = rule(pivot) - slope * static_cast<double>(pivot);
            return {AttachmentRule::affine(rule.gamma(), rule(0)),
                    AttachmentRule::affine(slope, intercept)};
        }
    }
    throw Error("unreachable");
}

double power_law_exponent(const AttachmentRule& rule) {
    if (rule.gamma() == 0.0)
        throw GammaZeroError("power-law exponent undefined for gamma = 0");
    return (rule.gamma() + 1.0) / rule.gamma();
}

}  // namespace netvuln
