#pragma once

#include "porc/core.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace porc {

/// Weakly decreasing sequence of positive integers; the empty partition is allowed.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    Partition(std::initializer_list<int> p) : parts(p) { normalise(); }
    explicit Partition(std::vector<int> p) : parts(std::move(p)) { normalise(); }

    int weight() const {
        int w = 0;
        for (int x : parts) w += x;
        return w;
    }
    int length() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }
    int largest() const { return parts.empty() ? 0 : parts.front(); }
    int operator[](std::size_t i) const { return i < parts.size() ? parts[i] : 0; }

    /// Number of parts >= k.
    int count_at_least(int k) const {
        int c = 0;
        for (int x : parts) c += x >= k;
        return c;
    }

    Partition conjugate() const {
        std::vector<int> c;
        for (int k = 1; k <= largest(); ++k) c.push_back(count_at_least(k));
        return Partition(std::move(c));
    }

    /// Distinct part values in decreasing order with their multiplicities.
    std::vector<std::pair<int, int>> blocks() const {
        std::vector<std::pair<int, int>> out;
        for (int x : parts) {
            if (!out.empty() && out.back().first == x) ++out.back().second;
            else out.emplace_back(x, 1);
        }
        return out;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
        return s + ")";
    }

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

private:
    void normalise() {
        for (int x : parts)
            if (x <= 0) throw DomainError("partition parts must be positive");
        std::sort(parts.begin(), parts.end(), std::greater<int>());
    }
};

struct PartitionHash {
    std::size_t operator()(const Partition& p) const {
        std::size_t h = 0;
        for (int x : p.parts) hash_combine(h, static_cast<std::size_t>(x));
        return h;
    }
};

/// Parses "2,1,1" (or "" / "()" for the empty partition). Order of the input is irrelevant.
inline Partition parse_partition(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '(' || c == ')' || c == ' '; }), s.end());
    std::vector<int> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw DomainError("bad partition entry '" + tok + "'");
        }
        if (used != tok.size()) throw DomainError("bad partition entry '" + tok + "'");
        parts.push_back(v);
    }
    return Partition(std::move(parts));
}

/// All partitions of n, in reverse lexicographic order ((n) first, (1^n) last).
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = std::min(left, maxpart); k >= 1; --k) {
            cur.push_back(k);
            rec(left - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

/// Partitions of n with at most len parts, each <= maxpart.
inline std::vector<Partition> partitions_in_box(int n, int len, int maxpart) {
    std::vector<Partition> out;
    for (auto& p : partitions_of(n))
        if (p.length() <= len && p.largest() <= maxpart) out.push_back(p);
    return out;
}

/// mu subset of lambda as Young diagrams.
inline bool contained_in(const Partition& mu, const Partition& lambda) {
    if (mu.length() > lambda.length()) return false;
    for (std::size_t i = 0; i < mu.parts.size(); ++i)
        if (mu.parts[i] > lambda.parts[i]) return false;
    return true;
}

inline Partition ones(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 1)); }

}  // namespace porc
