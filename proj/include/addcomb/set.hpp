#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "addcomb/group.hpp"

namespace addcomb {

// Finite subset of a group, bit-packed over [0, order). Treated as an
// immutable value after construction: operations return new sets.
class GroupSet {
  public:
    explicit GroupSet(GroupSpec g)
        : group_(std::move(g)), words_((group_.order() + 63) / 64, 0) {}

    static GroupSet from_elements(const GroupSpec& g, const std::vector<Element>& elems) {
        GroupSet s(g);
        for (Element e : elems) s.insert(e);
        return s;
    }

    static GroupSet singleton(const GroupSpec& g, Element e) {
        return from_elements(g, {e});
    }

    static GroupSet full(const GroupSpec& g) {
        GroupSet s(g);
        for (Element e = 0; e < g.order(); ++e) s.insert(e);
        return s;
    }

    const GroupSpec& group() const { return group_; }
    std::uint64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(Element e) const {
        return (words_[e >> 6] >> (e & 63)) & 1;
    }

    void insert(Element e) {
        group_.check_element(e);
        std::uint64_t& w = words_[e >> 6];
        const std::uint64_t bit = std::uint64_t(1) << (e & 63);
        if (!(w & bit)) {
            w |= bit;
            ++size_;
        }
    }

    void erase(Element e) {
        group_.check_element(e);
        std::uint64_t& w = words_[e >> 6];
        const std::uint64_t bit = std::uint64_t(1) << (e & 63);
        if (w & bit) {
            w &= ~bit;
            --size_;
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = std::countr_zero(w);
                f(static_cast<Element>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<Element> elements() const {
        std::vector<Element> out;
        out.reserve(size_);
        for_each([&](Element e) { out.push_back(e); });
        return out;
    }

    GroupSet unite(const GroupSet& other) const {
        check_same_group(other);
        GroupSet out(group_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            out.words_[i] = words_[i] | other.words_[i];
        out.recount();
        return out;
    }

    GroupSet intersect(const GroupSet& other) const {
        check_same_group(other);
        GroupSet out(group_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            out.words_[i] = words_[i] & other.words_[i];
        out.recount();
        return out;
    }

    GroupSet minus(const GroupSet& other) const {
        check_same_group(other);
        GroupSet out(group_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            out.words_[i] = words_[i] & ~other.words_[i];
        out.recount();
        return out;
    }

    GroupSet complement() const {
        GroupSet out(group_);
        for (Element e = 0; e < group_.order(); ++e)
            if (!contains(e)) out.insert(e);
        return out;
    }

    GroupSet translate(Element t) const {
        GroupSet out(group_);
        for_each([&](Element e) { out.insert(group_.add(e, t)); });
        return out;
    }

    GroupSet negate() const {
        GroupSet out(group_);
        for_each([&](Element e) { out.insert(group_.neg(e)); });
        return out;
    }

    bool is_subset_of(const GroupSet& other) const {
        check_same_group(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    bool intersects(const GroupSet& other) const {
        check_same_group(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    // Numeric order of the bit-packed masks (bit e = element e); this is
    // the tie-break order used for canonical witnesses.
    int compare_mask(const GroupSet& other) const {
        check_same_group(other);
        for (std::size_t i = words_.size(); i-- > 0;) {
            if (words_[i] != other.words_[i])
                return words_[i] < other.words_[i] ? -1 : 1;
        }
        return 0;
    }

    friend bool operator==(const GroupSet& a, const GroupSet& b) {
        return a.group_ == b.group_ && a.words_ == b.words_;
    }

    void check_same_group(const GroupSet& other) const {
        if (!(group_ == other.group_)) throw std::invalid_argument("group mismatch");
    }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for_each([&](Element e) {
            if (!first) out += ",";
            out += std::to_string(e);
            first = false;
        });
        return out + "}";
    }

  private:
    void recount() {
        size_ = 0;
        for (std::uint64_t w : words_) size_ += std::popcount(w);
    }

    GroupSpec group_;
    std::vector<std::uint64_t> words_;
    std::uint64_t size_ = 0;
};

inline GroupSet sumset(const GroupSet& a, const GroupSet& b) {
    a.check_same_group(b);
    GroupSet out(a.group());
    const auto eb = b.elements();
    a.for_each([&](Element x) {
        for (Element y : eb) out.insert(a.group().add(x, y));
    });
    return out;
}

inline GroupSet difference_set(const GroupSet& a, const GroupSet& b) {
    return sumset(a, b.negate());
}

// nA - mA by iterated sumset/difference; n, m >= 0, n + m >= 1.
inline GroupSet higher_sumset(const GroupSet& a, unsigned n, unsigned m) {
    if (n + m == 0) throw std::invalid_argument("higher_sumset needs n + m >= 1");
    GroupSet acc = GroupSet::singleton(a.group(), 0);
    for (unsigned i = 0; i < n; ++i) acc = sumset(acc, a);
    if (m > 0) {
        const GroupSet na = a.negate();
        for (unsigned i = 0; i < m; ++i) acc = sumset(acc, na);
    }
    return acc;
}

// |X+Y| = |X||Y|, equivalently (X-X) cap (Y-Y) = {0}. Both routes are
// computed and must agree.
inline bool is_direct_sum(const GroupSet& x, const GroupSet& y) {
    x.check_same_group(y);
    if (x.empty() || y.empty()) throw std::invalid_argument("direct-sum test needs nonempty sets");
    const bool by_cardinality = sumset(x, y).size() == x.size() * y.size();
    GroupSet common = difference_set(x, x).intersect(difference_set(y, y));
    common.erase(0);
    const bool by_differences = common.empty();
    if (by_cardinality != by_differences)
        throw std::logic_error("direct-sum criteria disagree");
    return by_cardinality;
}

// --- set literal format -----------------------------------------------
// One set per line: `name = {e1, e2, ...}`, elements as canonical indices
// or coordinate tuples `(c1,...,cd)`. Files start with one group-spec line.

inline Element parse_element(const GroupSpec& g, const std::string& token) {
    std::string t;
    for (char c : token)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty element token");
    if (t.front() == '(') {
        if (t.back() != ')') throw std::invalid_argument("malformed tuple: " + token);
        std::vector<std::uint64_t> coords;
        std::string inner = t.substr(1, t.size() - 2);
        std::stringstream ss(inner);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (part.empty()) throw std::invalid_argument("malformed tuple: " + token);
            coords.push_back(std::stoull(part));
        }
        return g.encode(coords);
    }
    std::size_t used = 0;
    unsigned long long v = std::stoull(t, &used);
    if (used != t.size()) throw std::invalid_argument("malformed element: " + token);
    g.check_element(v);
    return v;
}

// Parses `name = {…}`; returns (name, set).
inline std::pair<std::string, GroupSet> parse_set_literal(const GroupSpec& g,
                                                          const std::string& line) {
    auto eq = line.find('=');
    auto open = line.find('{');
    auto close = line.rfind('}');
    if (eq == std::string::npos || open == std::string::npos || close == std::string::npos ||
        open > close || eq > open)
        throw std::invalid_argument("malformed set literal: " + line);
    std::string name = line.substr(0, eq);
    name.erase(std::remove_if(name.begin(), name.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               name.end());
    if (name.empty()) throw std::invalid_argument("set literal needs a name: " + line);
    GroupSet s(g);
    std::string body = line.substr(open + 1, close - open - 1);
    // split on commas outside parentheses
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    for (auto& tok : tokens) {
        bool blank = std::all_of(tok.begin(), tok.end(),
                                 [](unsigned char c) { return std::isspace(c); });
        if (!blank) s.insert(parse_element(g, tok));
    }
    return {name, s};
}

// Whole-file format: group spec on the first non-blank line, then set
// literals. Comment lines start with '#'.
inline std::pair<GroupSpec, std::map<std::string, GroupSet>> parse_set_file(
    const std::string& text, std::uint64_t max_order = kDefaultMaxOrder) {
    std::stringstream ss(text);
    std::string line;
    std::string spec_line;
    std::vector<std::string> set_lines;
    while (std::getline(ss, line)) {
        std::string stripped = line;
        stripped.erase(std::remove_if(stripped.begin(), stripped.end(),
                                      [](unsigned char c) { return std::isspace(c); }),
                       stripped.end());
        if (stripped.empty() || stripped.front() == '#') continue;
        if (spec_line.empty())
            spec_line = stripped;
        else
            set_lines.push_back(line);
    }
    if (spec_line.empty()) throw std::invalid_argument("set file has no group spec line");
    GroupSpec g = parse_group_spec(spec_line, max_order);
    std::map<std::string, GroupSet> sets;
    for (const auto& l : set_lines) {
        auto [name, s] = parse_set_literal(g, l);
        sets.insert_or_assign(name, s);
    }
    return {g, sets};
}

}  // namespace addcomb
