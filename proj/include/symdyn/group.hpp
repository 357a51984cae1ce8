// group.hpp -- finitely generated group contexts: word arithmetic, word
// problem oracles, canonical forms, and enumeration of word sets W_n and
// balls B_n.
//
// Convention: generators are single lowercase letters; the uppercase letter
// is the formal inverse (a/A). The generating set is always closed under
// inverses and the empty word denotes the identity.
#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symdyn/verdict.hpp"

namespace symdyn {

inline bool is_generator_letter(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline char inverse_letter(char c) {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A')
                                  : static_cast<char>(c - 'A' + 'a');
}

// Rank used for the canonical (shortlex) order on words: a < A < b < B < ...
inline int letter_rank(char c) {
    return (c >= 'a' && c <= 'z') ? 2 * (c - 'a') : 2 * (c - 'A') + 1;
}

struct Generator {
    char name;
    bool is_inverse;

    friend auto operator<=>(const Generator&, const Generator&) = default;
};

// A word over the generating set. Ordered by shortlex (length first, then
// letter rank); this is the canonical order used for supports and balls
// throughout the library.
class Word {
public:
    Word() = default;
    explicit Word(std::string letters) : letters_(std::move(letters)) {}

    const std::string& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word concat(const Word& other) const { return Word(letters_ + other.letters_); }

    // Formal inverse: reverse the word and invert every letter.
    Word inverse() const {
        std::string out;
        out.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            out.push_back(inverse_letter(*it));
        return Word(std::move(out));
    }

    friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (a.letters_.size() != b.letters_.size())
            return a.letters_.size() <=> b.letters_.size();
        for (std::size_t i = 0; i < a.letters_.size(); ++i) {
            int ra = letter_rank(a.letters_[i]);
            int rb = letter_rank(b.letters_[i]);
            if (ra != rb) return ra <=> rb;
        }
        return std::strong_ordering::equal;
    }

private:
    std::string letters_;
};

class GroupCtx;

// A group element held as its canonical word. Two elements of the same
// decidable context are equal iff their canonical words are identical.
// Only GroupCtx can produce these, which keeps the invariant honest.
class GroupElement {
public:
    GroupElement() = default;  // identity

    const Word& word() const { return word_; }
    // Word norm |g|: canonical forms are geodesic for the built-in kinds.
    std::size_t norm() const { return word_.length(); }
    bool is_identity() const { return word_.empty(); }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.word_ == b.word_;
    }
    friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
        return a.word_ <=> b.word_;
    }

private:
    friend class GroupCtx;
    explicit GroupElement(Word canonical) : word_(std::move(canonical)) {}
    Word word_;
};

enum class GroupKind { Zd, Free, Presented };
enum class WordProblemMode { Decidable, SemiDecidable };

// One rewriting move in a word-problem derivation. Positions index letters
// of the word the move is applied to; relator indexes the context's
// relator table (declared relators and their formal inverses).
struct RewriteMove {
    enum class Kind { FreeCancel, RelatorDelete, RelatorInsert };
    Kind kind;
    int pos;
    int relator;  // -1 for FreeCancel

    friend bool operator==(const RewriteMove&, const RewriteMove&) = default;
};

struct EqualsResult {
    Verdict verdict = Verdict::Unknown;
    // For semi-decidable CertifiedYes: moves taking u v^-1 to the empty word.
    std::vector<RewriteMove> proof;
};

class GroupCtx {
public:
    static GroupCtx zd(int d) {
        if (d < 1 || d > 26) throw Error("zd group: dimension must be in 1..26");
        GroupCtx g;
        g.kind_ = GroupKind::Zd;
        g.size_ = d;
        for (int i = 0; i < d; ++i) g.letters_.push_back(static_cast<char>('a' + i));
        return g;
    }

    static GroupCtx free_group(int rank) {
        if (rank < 1 || rank > 26) throw Error("free group: rank must be in 1..26");
        GroupCtx g;
        g.kind_ = GroupKind::Free;
        g.size_ = rank;
        for (int i = 0; i < rank; ++i) g.letters_.push_back(static_cast<char>('a' + i));
        return g;
    }

    static GroupCtx free_group_on(std::vector<char> letters) {
        GroupCtx g;
        g.kind_ = GroupKind::Free;
        g.size_ = static_cast<int>(letters.size());
        g.letters_ = std::move(letters);
        g.check_letters();
        return g;
    }

    static GroupCtx presented(std::vector<char> letters, std::vector<std::string> relators) {
        GroupCtx g;
        g.kind_ = GroupKind::Presented;
        g.size_ = static_cast<int>(letters.size());
        g.letters_ = std::move(letters);
        g.check_letters();
        for (auto& r : relators) {
            g.parse_word(r);  // validates letters
            if (!r.empty()) g.relators_.push_back(r);
        }
        // Relator table: each declared relator followed by its formal inverse.
        for (const auto& r : g.relators_) {
            g.relator_table_.push_back(r);
            std::string inv = Word(r).inverse().letters();
            if (inv != r) g.relator_table_.push_back(inv);
        }
        return g;
    }

    GroupKind kind() const { return kind_; }
    WordProblemMode wp_mode() const {
        return kind_ == GroupKind::Presented ? WordProblemMode::SemiDecidable
                                             : WordProblemMode::Decidable;
    }
    bool decidable() const { return wp_mode() == WordProblemMode::Decidable; }
    int dimension() const { return size_; }  // d for Zd, rank otherwise
    const std::vector<char>& letters() const { return letters_; }
    const std::vector<std::string>& relators() const { return relators_; }
    const std::vector<std::string>& relator_table() const { return relator_table_; }

    // Generating set closed under inverses, in canonical order a,A,b,B,...
    std::vector<Generator> generating_set() const {
        std::vector<Generator> s;
        for (char c : letters_) {
            s.push_back({c, false});
            s.push_back({inverse_letter(c), true});
        }
        return s;
    }

    friend bool operator==(const GroupCtx& a, const GroupCtx& b) {
        return a.kind_ == b.kind_ && a.size_ == b.size_ && a.letters_ == b.letters_ &&
               a.relators_ == b.relators_;
    }

    // Parses and validates a word over this generating set.
    Word parse_word(const std::string& s) const {
        for (char c : s) {
            if (!is_generator_letter(c) || !has_letter(c))
                throw Error(std::string("word '") + s + "' uses letter '" + c +
                            "' outside the generating set");
        }
        return Word(s);
    }

    GroupElement identity() const { return GroupElement(Word()); }

    GroupElement canonicalize(const Word& w) const {
        require_decidable("canonicalize");
        switch (kind_) {
            case GroupKind::Zd: return GroupElement(zd_reduce(w));
            default: return GroupElement(free_reduce(w));
        }
    }

    GroupElement mul(const GroupElement& g, const GroupElement& h) const {
        return canonicalize(g.word().concat(h.word()));
    }

    GroupElement inv(const GroupElement& g) const { return canonicalize(g.word().inverse()); }

    // All words of length <= n, shortlex order (the empty word first).
    std::vector<Word> words_upto(int n) const {
        if (n < 0) throw Error("words_upto: n must be >= 0");
        std::vector<char> alpha = ordered_alphabet();
        std::vector<Word> out;
        out.emplace_back();
        std::vector<std::string> layer{""};
        for (int len = 1; len <= n; ++len) {
            std::vector<std::string> next;
            next.reserve(layer.size() * alpha.size());
            for (const auto& w : layer)
                for (char c : alpha) next.push_back(w + c);
            for (const auto& w : next) out.emplace_back(w);
            layer = std::move(next);
        }
        return out;
    }

    // B_n = {canonical(w) : w in W_n}, deduplicated, shortlex order.
    // Canonical forms are enumerated directly (lattice points for Z^d,
    // reduced words for free groups); the set equals the word-set quotient
    // because canonical forms are geodesic.
    std::vector<GroupElement> ball(int n) const {
        require_decidable("ball");
        if (n < 0) throw Error("ball: n must be >= 0");
        std::set<GroupElement> acc;
        if (kind_ == GroupKind::Zd) {
            std::vector<long> coords(static_cast<std::size_t>(size_), 0);
            std::function<void(int, int)> fill = [&](int dim, int left) {
                if (dim == size_) {
                    acc.insert(zd_element(coords));
                    return;
                }
                for (int k = -left; k <= left; ++k) {
                    coords[static_cast<std::size_t>(dim)] = k;
                    fill(dim + 1, left - std::abs(k));
                }
            };
            fill(0, n);
        } else {
            std::vector<char> alpha = ordered_alphabet();
            std::string word;
            std::function<void(int)> grow = [&](int left) {
                acc.insert(GroupElement(Word(word)));
                if (left == 0) return;
                for (char c : alpha) {
                    if (!word.empty() && word.back() == inverse_letter(c)) continue;
                    word.push_back(c);
                    grow(left - 1);
                    word.pop_back();
                }
            };
            grow(n);
        }
        return {acc.begin(), acc.end()};
    }

    // Semi-decides u = v in G. Decidable contexts answer exactly and ignore
    // fuel. Presented contexts run a breadth-first search over rewriting
    // moves on u v^-1 (one move = one free cancellation, relator deletion,
    // or relator insertion); CertifiedYes iff the empty word is reachable
    // within `fuel` moves. Inequality is never certified.
    EqualsResult equals_semi(const Word& u, const Word& v, int fuel) const {
        if (decidable()) {
            bool eq = canonicalize(u) == canonicalize(v);
            return {eq ? Verdict::CertifiedYes : Verdict::CertifiedNo, {}};
        }
        return bfs_rewrite(u.concat(v.inverse()), fuel);
    }

    // Partition of W_n induced by equals_semi at the given fuel (connected
    // components of the certified-equal relation). Classes and their members
    // are in shortlex order. Increasing fuel only merges classes.
    std::vector<std::vector<Word>> ball_approx(int n, int fuel) const {
        std::vector<Word> words = words_upto(n);
        std::vector<int> parent(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) parent[i] = static_cast<int>(i);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                int ri = find(static_cast<int>(i)), rj = find(static_cast<int>(j));
                if (ri == rj) continue;
                if (equals_semi(words[i], words[j], fuel).verdict == Verdict::CertifiedYes)
                    parent[std::max(ri, rj)] = std::min(ri, rj);
            }
        }
        std::map<int, std::vector<Word>> classes;
        for (std::size_t i = 0; i < words.size(); ++i)
            classes[find(static_cast<int>(i))].push_back(words[i]);
        std::vector<std::vector<Word>> out;
        out.reserve(classes.size());
        for (auto& [root, members] : classes) out.push_back(std::move(members));
        return out;
    }

    // Zd coordinate helpers (used by the 1d automaton and the renderer).
    std::vector<long> zd_coords(const GroupElement& g) const {
        if (kind_ != GroupKind::Zd) throw Error("zd_coords: not a Zd context");
        std::vector<long> c(static_cast<std::size_t>(size_), 0);
        for (char ch : g.word().letters()) {
            if (ch >= 'a' && ch <= 'z') ++c[letter_index(ch)];
            else --c[letter_index(inverse_letter(ch))];
        }
        return c;
    }

    GroupElement zd_element(const std::vector<long>& coords) const {
        if (kind_ != GroupKind::Zd) throw Error("zd_element: not a Zd context");
        if (coords.size() != static_cast<std::size_t>(size_))
            throw Error("zd_element: coordinate count mismatch");
        std::string w;
        for (int i = 0; i < size_; ++i) {
            char c = coords[i] >= 0 ? letters_[i] : inverse_letter(letters_[i]);
            for (long k = 0; k < std::labs(coords[i]); ++k) w.push_back(c);
        }
        return GroupElement(Word(std::move(w)));
    }

private:
    GroupCtx() = default;

    void check_letters() const {
        if (letters_.empty()) throw Error("group: at least one generator required");
        std::set<char> seen;
        for (char c : letters_) {
            if (c < 'a' || c > 'z')
                throw Error("group: generator names must be single lowercase letters");
            if (!seen.insert(c).second) throw Error("group: duplicate generator");
        }
    }

    bool has_letter(char c) const {
        char base = (c >= 'a' && c <= 'z') ? c : inverse_letter(c);
        return std::find(letters_.begin(), letters_.end(), base) != letters_.end();
    }

    std::size_t letter_index(char lower) const {
        return static_cast<std::size_t>(
            std::find(letters_.begin(), letters_.end(), lower) - letters_.begin());
    }

    std::vector<char> ordered_alphabet() const {
        std::vector<char> a;
        for (char c : letters_) {
            a.push_back(c);
            a.push_back(inverse_letter(c));
        }
        return a;
    }

    void require_decidable(const char* op) const {
        if (!decidable())
            throw Error(std::string(op) +
                        ": context has a semi-decidable word problem (use equals_semi)");
    }

    Word zd_reduce(const Word& w) const {
        std::vector<long> c(static_cast<std::size_t>(size_), 0);
        for (char ch : w.letters()) {
            if (ch >= 'a' && ch <= 'z') ++c[letter_index(ch)];
            else --c[letter_index(inverse_letter(ch))];
        }
        std::string out;
        for (int i = 0; i < size_; ++i) {
            char letter = c[i] >= 0 ? letters_[i] : inverse_letter(letters_[i]);
            for (long k = 0; k < std::labs(c[i]); ++k) out.push_back(letter);
        }
        return Word(std::move(out));
    }

    static Word free_reduce(const Word& w) {
        std::string st;
        for (char c : w.letters()) {
            if (!st.empty() && st.back() == inverse_letter(c)) st.pop_back();
            else st.push_back(c);
        }
        return Word(std::move(st));
    }

    EqualsResult bfs_rewrite(const Word& start, int fuel) const {
        if (fuel < 0) fuel = 0;
        if (start.empty()) return {Verdict::CertifiedYes, {}};

        std::size_t max_shrink = 2;
        for (const auto& r : relator_table_) max_shrink = std::max(max_shrink, r.size());
        auto hopeless = [&](std::size_t len, int depth) {
            // Each move removes at most max_shrink letters.
            std::size_t remaining = static_cast<std::size_t>(fuel - depth);
            return len > remaining * max_shrink;
        };
        if (hopeless(start.length(), 0)) return {Verdict::Unknown, {}};

        struct Node {
            std::string word;
            int depth;
            int parent;
            RewriteMove move;
        };
        std::vector<Node> nodes;
        std::map<std::string, int> visited;
        std::deque<int> queue;
        nodes.push_back({start.letters(), 0, -1, {}});
        visited.emplace(start.letters(), 0);
        queue.push_back(0);

        auto emit = [&](int parent, std::string word, RewriteMove mv) -> int {
            int depth = nodes[parent].depth + 1;
            if (word.empty()) {
                nodes.push_back({std::move(word), depth, parent, mv});
                return static_cast<int>(nodes.size()) - 1;
            }
            if (depth >= fuel || hopeless(word.size(), depth)) return -1;
            if (visited.count(word)) return -1;
            visited.emplace(word, depth);
            nodes.push_back({std::move(word), depth, parent, mv});
            queue.push_back(static_cast<int>(nodes.size()) - 1);
            return -1;
        };

        int goal = -1;
        while (!queue.empty() && goal < 0) {
            int cur = queue.front();
            queue.pop_front();
            if (nodes[cur].depth >= fuel) continue;
            const std::string w = nodes[cur].word;
            const int len = static_cast<int>(w.size());
            for (int pos = 0; pos <= len && goal < 0; ++pos) {
                if (pos + 1 < len && w[pos + 1] == inverse_letter(w[pos])) {
                    std::string next = w.substr(0, pos) + w.substr(pos + 2);
                    goal = emit(cur, std::move(next),
                                {RewriteMove::Kind::FreeCancel, pos, -1});
                    if (goal >= 0) break;
                }
                for (int ri = 0; ri < static_cast<int>(relator_table_.size()) && goal < 0;
                     ++ri) {
                    const std::string& r = relator_table_[ri];
                    if (w.compare(pos, r.size(), r) == 0 &&
                        pos + static_cast<int>(r.size()) <= len) {
                        std::string next = w.substr(0, pos) + w.substr(pos + r.size());
                        goal = emit(cur, std::move(next),
                                    {RewriteMove::Kind::RelatorDelete, pos, ri});
                        if (goal >= 0) break;
                    }
                }
                for (int ri = 0; ri < static_cast<int>(relator_table_.size()) && goal < 0;
                     ++ri) {
                    std::string next = w.substr(0, pos) + relator_table_[ri] + w.substr(pos);
                    goal = emit(cur, std::move(next),
                                {RewriteMove::Kind::RelatorInsert, pos, ri});
                    if (goal >= 0) break;
                }
            }
        }
        if (goal < 0) return {Verdict::Unknown, {}};
        std::vector<RewriteMove> proof;
        for (int at = goal; nodes[at].parent >= 0; at = nodes[at].parent)
            proof.push_back(nodes[at].move);
        std::reverse(proof.begin(), proof.end());
        return {Verdict::CertifiedYes, std::move(proof)};
    }

    GroupKind kind_ = GroupKind::Zd;
    int size_ = 1;
    std::vector<char> letters_;
    std::vector<std::string> relators_;
    std::vector<std::string> relator_table_;
};

// Replays a rewriting proof: applies the moves to u v^-1 and checks the
// result is the empty word. Throws on an inapplicable move.
inline bool replay_rewrite(const GroupCtx& ctx, const Word& u, const Word& v,
                           const std::vector<RewriteMove>& proof) {
    std::string w = u.concat(v.inverse()).letters();
    const auto& table = ctx.relator_table();
    for (const auto& mv : proof) {
        switch (mv.kind) {
            case RewriteMove::Kind::FreeCancel: {
                if (mv.pos < 0 || mv.pos + 1 >= static_cast<int>(w.size()) ||
                    w[mv.pos + 1] != inverse_letter(w[mv.pos]))
                    throw Error("rewrite replay: bad free cancellation");
                w.erase(static_cast<std::size_t>(mv.pos), 2);
                break;
            }
            case RewriteMove::Kind::RelatorDelete: {
                if (mv.relator < 0 || mv.relator >= static_cast<int>(table.size()))
                    throw Error("rewrite replay: bad relator index");
                const std::string& r = table[mv.relator];
                if (mv.pos < 0 || mv.pos + r.size() > w.size() ||
                    w.compare(mv.pos, r.size(), r) != 0)
                    throw Error("rewrite replay: relator does not match");
                w.erase(static_cast<std::size_t>(mv.pos), r.size());
                break;
            }
            case RewriteMove::Kind::RelatorInsert: {
                if (mv.relator < 0 || mv.relator >= static_cast<int>(table.size()))
                    throw Error("rewrite replay: bad relator index");
                if (mv.pos < 0 || mv.pos > static_cast<int>(w.size()))
                    throw Error("rewrite replay: bad insert position");
                w.insert(static_cast<std::size_t>(mv.pos), table[mv.relator]);
                break;
            }
        }
    }
    return w.empty();
}

}  // namespace symdyn
