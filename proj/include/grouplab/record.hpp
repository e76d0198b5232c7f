#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace grouplab {

enum class Verdict { pass, fail, inapplicable, inconclusive };

std::string to_string(Verdict v);

struct Hypothesis {
    std::string name;
    bool holds = false;
};

/// Outcome of checking one lemma on one instance.
struct VerificationRecord {
    std::string lemma;
    std::string instance;
    std::vector<Hypothesis> hypotheses;
    Verdict verdict = Verdict::inconclusive;
    /// Instance-specific numbers (orders, exponents, witnesses).
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    bool all_hypotheses() const;
    nlohmann::ordered_json to_json() const;
};

}  // namespace grouplab
