// Shared constructors for test fixtures.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "symdyn/group.hpp"
#include "symdyn/pattern.hpp"
#include "symdyn/subshift.hpp"

namespace helpers {

// Pattern over Z on consecutive cells start, start+1, ... with one digit
// per symbol index.
inline symdyn::Pattern pat1d(const symdyn::GroupCtx& z, long start, const std::string& digits) {
    std::vector<symdyn::Pattern::Cell> cells;
    for (std::size_t i = 0; i < digits.size(); ++i)
        cells.emplace_back(z.zd_element({start + static_cast<long>(i)}), digits[i] - '0');
    return symdyn::Pattern(std::move(cells));
}

// Pattern over Z on arbitrary cells.
inline symdyn::Pattern patz(const symdyn::GroupCtx& z,
                            const std::vector<std::pair<long, int>>& cells) {
    std::vector<symdyn::Pattern::Cell> out;
    for (const auto& [off, sym] : cells) out.emplace_back(z.zd_element({off}), sym);
    return symdyn::Pattern(std::move(out));
}

inline symdyn::PatternPresentation pres(
    const std::vector<std::pair<std::string, int>>& cells) {
    std::vector<symdyn::PatternPresentation::Cell> out;
    for (const auto& [w, sym] : cells) out.emplace_back(symdyn::Word(w), sym);
    return symdyn::PatternPresentation(std::move(out));
}

inline symdyn::Alphabet binary() { return symdyn::Alphabet({"0", "1"}); }
inline symdyn::Alphabet ternary() { return symdyn::Alphabet({"0", "1", "2"}); }

// SFT over Z forbidding the given contiguous words (digit strings).
inline symdyn::Sft sft_1d(const symdyn::GroupCtx& z, const symdyn::Alphabet& alphabet,
                          const std::vector<std::string>& words) {
    std::vector<symdyn::Pattern> forbidden;
    for (const auto& w : words) forbidden.push_back(pat1d(z, 0, w));
    return symdyn::Sft(z, alphabet, std::move(forbidden));
}

inline symdyn::Sft golden_mean(const symdyn::GroupCtx& z) {
    return sft_1d(z, binary(), {"11"});
}

}  // namespace helpers
