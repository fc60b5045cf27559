#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "sectorbench/errors.hpp"

namespace sectorbench {

using Json = nlohmann::ordered_json;

struct Verdict {
  std::string check_id;
  std::string theorem_tag;
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

/// Ordered collection of verdicts plus free-form findings and artifact dumps.
class Report {
 public:
  Json findings = Json::object();
  Json artifacts = Json::object();

  const Verdict& add(Verdict v) {
    for (const auto& existing : verdicts_) {
      if (existing.check_id == v.check_id) throw std::logic_error("duplicate check id " + v.check_id);
    }
    if (!(v.residual >= 0.0)) v.residual = std::abs(v.residual);
    verdicts_.push_back(std::move(v));
    return verdicts_.back();
  }

  const Verdict& check(std::string id, std::string tag, bool pass, double residual = 0.0, std::string detail = {}) {
    return add(Verdict{std::move(id), std::move(tag), pass, residual, std::move(detail)});
  }

  /// Pass when residual <= bound.
  const Verdict& check_residual(std::string id, std::string tag, double residual, double bound,
                                std::string detail = {}) {
    return add(Verdict{std::move(id), std::move(tag), residual <= bound, residual, std::move(detail)});
  }

  const std::vector<Verdict>& verdicts() const { return verdicts_; }

  const Verdict* find(const std::string& id) const {
    for (const auto& v : verdicts_) {
      if (v.check_id == id) return &v;
    }
    return nullptr;
  }

  bool passed() const {
    for (const auto& v : verdicts_) {
      if (!v.pass) return false;
    }
    return true;
  }

  std::vector<Verdict> failures() const {
    std::vector<Verdict> out;
    for (const auto& v : verdicts_) {
      if (!v.pass) out.push_back(v);
    }
    return out;
  }

  void merge(const Report& other, const std::string& prefix) {
    for (auto v : other.verdicts_) {
      v.check_id = prefix + "." + v.check_id;
      add(std::move(v));
    }
    if (!other.findings.empty()) findings[prefix] = other.findings;
    if (!other.artifacts.empty()) artifacts[prefix] = other.artifacts;
  }

  Json verdicts_json() const {
    Json out = Json::array();
    for (const auto& v : verdicts_) {
      out.push_back({{"check_id", v.check_id},
                     {"theorem", v.theorem_tag},
                     {"pass", v.pass},
                     {"residual", v.residual},
                     {"detail", v.detail}});
    }
    return out;
  }

  Json to_json() const {
    Json out;
    out["pass"] = passed();
    out["verdicts"] = verdicts_json();
    out["findings"] = findings;
    if (!artifacts.empty()) out["artifacts"] = artifacts;
    return out;
  }

  inline void require() const;

 private:
  std::vector<Verdict> verdicts_;
};

/// A proved identity failed numerically; carries the full report for diagnosis.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(Report report)
      : Error(describe(report)), report_(std::move(report)) {}

  const Report& report() const { return report_; }

 private:
  static std::string describe(const Report& r) {
    std::string msg = "invariant violated:";
    for (const auto& v : r.failures()) msg += " " + v.check_id + " (residual " + std::to_string(v.residual) + ")";
    return msg;
  }

  Report report_;
};

inline void Report::require() const {
  if (!passed()) throw InvariantViolation(*this);
}

}  // namespace sectorbench
