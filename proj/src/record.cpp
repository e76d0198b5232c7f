#include "grouplab/record.hpp"

#include <algorithm>

namespace grouplab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inapplicable: return "inapplicable";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

bool VerificationRecord::all_hypotheses() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
}

nlohmann::ordered_json VerificationRecord::to_json() const {
    nlohmann::ordered_json j;
    j["lemma"] = lemma;
    j["instance"] = instance;
    j["hypotheses"] = nlohmann::ordered_json::array();
    for (const auto& h : hypotheses) j["hypotheses"].push_back({{"name", h.name}, {"holds", h.holds}});
    j["verdict"] = to_string(verdict);
    if (!details.empty()) j["witness"] = details;
    return j;
}

}  // namespace grouplab
