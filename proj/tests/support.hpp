#pragma once

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplab/words.hpp"

namespace testsupport {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Random letter sequence of length in [0, max_len] over `rank` generators.
inline grouplab::words::Word random_word(std::size_t rank, int max_len, int min_len = 0) {
    int len = static_cast<int>(uniform(min_len, max_len));
    std::vector<int> letters;
    for (int i = 0; i < len; ++i) {
        int g = static_cast<int>(uniform(1, static_cast<long>(rank)));
        letters.push_back(uniform(0, 1) ? g : -g);
    }
    return grouplab::words::Word::from_letters(letters);
}

inline std::string source_path(const std::string& relative) { return std::string(GROUPLAB_SOURCE_DIR) + "/" + relative; }

inline nlohmann::json read_json(const std::string& relative) {
    std::ifstream in(source_path(relative));
    return nlohmann::json::parse(in);
}

}  // namespace testsupport
