#include "dpalg/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "dpalg/error.hpp"

namespace dpalg {

int total(const Composition& r) { return std::accumulate(r.begin(), r.end(), 0); }

std::string to_string(const Composition& r) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << ")";
    return os.str();
}

std::string perm_to_string(const Perm& p) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i] + 1;
    os << "]";
    return os.str();
}

Perm identity_perm(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "composing permutations of different sizes");
    Perm r(a.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm inverse(const Perm& a) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
    return r;
}

bool is_permutation(const Perm& a) {
    std::vector<bool> seen(a.size(), false);
    for (int x : a) {
        if (x < 0 || x >= static_cast<int>(a.size()) || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

std::uint64_t lehmer_rank(const Perm& a) {
    const int n = static_cast<int>(a.size());
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (a[j] < a[i]) ++smaller;
        rank = rank * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller);
    }
    return rank;
}

std::vector<Perm> all_perms(int n) {
    if (n > 10) throw Error(ErrorKind::TooLarge, "symmetric group too large");
    std::vector<Perm> out;
    Perm p = identity_perm(n);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Composition compose_split(const Composition& r, int i, int l, int l2) {
    if (i < 1 || i > static_cast<int>(r.size())) throw Error(ErrorKind::BadSplit, "split index out of range");
    if (l < 0 || l2 < 0 || l + l2 != r[i - 1])
        throw Error(ErrorKind::BadSplit, "parts " + std::to_string(l) + "+" + std::to_string(l2) + " do not sum to " +
                                             std::to_string(r[i - 1]));
    Composition out(r.begin(), r.begin() + (i - 1));
    out.push_back(l);
    out.push_back(l2);
    out.insert(out.end(), r.begin() + i, r.end());
    return out;
}

Composition refine(const Composition& q, const Composition& r) {
    if (total(q) != static_cast<int>(r.size()))
        throw Error(ErrorKind::ShapeMismatch, "q must be a composition of the number of parts of r");
    Composition out;
    std::size_t at = 0;
    for (int g : q) {
        int s = 0;
        for (int t = 0; t < g; ++t) s += r[at++];
        out.push_back(s);
    }
    return out;
}

Composition diamond(const Composition& r, const std::vector<Composition>& qs) {
    if (qs.size() != r.size()) throw Error(ErrorKind::ShapeMismatch, "one composition per part of r required");
    Composition out;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (int part : qs[i]) out.push_back(r[i] * part);
    return out;
}

Composition permute_parts(const Composition& r, const Perm& sigma) {
    if (sigma.size() != r.size()) throw Error(ErrorKind::ShapeMismatch, "permutation size differs from part count");
    auto inv = inverse(sigma);
    Composition out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) out[j] = r[inv[j]];
    return out;
}

Perm block_permutation(const Perm& rho, const Composition& r) {
    if (rho.size() != r.size() || !is_permutation(rho))
        throw Error(ErrorKind::ShapeMismatch, "block permutation needs a permutation on the parts of r");
    const std::size_t s = r.size();
    auto inv = inverse(rho);
    std::vector<int> slot_offset(s, 0);
    for (std::size_t j = 1; j < s; ++j) slot_offset[j] = slot_offset[j - 1] + r[inv[j - 1]];
    Perm out(total(r));
    int pos = 0;
    for (std::size_t i = 0; i < s; ++i)
        for (int t = 0; t < r[i]; ++t) out[pos++] = slot_offset[rho[i]] + t;
    return out;
}

std::vector<Perm> shuffles(const Composition& r) {
    const int n = total(r);
    // w[v] = block receiving value v; distinct multiset words give distinct shuffles
    std::vector<int> w;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (int t = 0; t < r[i]; ++t) w.push_back(static_cast<int>(i));
    std::vector<Perm> out;
    do {
        Perm p(n);
        std::vector<int> next(r.size(), 0);
        std::vector<int> start(r.size(), 0);
        for (std::size_t i = 1; i < r.size(); ++i) start[i] = start[i - 1] + r[i - 1];
        for (int v = 0; v < n; ++v) p[start[w[v]] + next[w[v]]++] = v;
        out.push_back(std::move(p));
    } while (std::next_permutation(w.begin(), w.end()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Perm> young_subgroup(const Composition& r) {
    const int n = total(r);
    std::vector<Perm> out{identity_perm(n)};
    int start = 0;
    for (int part : r) {
        std::vector<Perm> next;
        auto local = all_perms(part);
        for (const auto& g : out)
            for (const auto& l : local) {
                Perm h = g;
                for (int t = 0; t < part; ++t) h[start + t] = start + l[t];
                next.push_back(std::move(h));
            }
        out = std::move(next);
        start += part;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Perm> group_closure(const std::vector<Perm>& gens, int n) {
    if (n > 10) throw Error(ErrorKind::TooLarge, "symmetric group too large");
    std::unordered_set<std::uint64_t> seen;
    std::vector<Perm> out{identity_perm(n)};
    seen.insert(lehmer_rank(out[0]));
    for (std::size_t at = 0; at < out.size(); ++at) {
        for (const auto& g : gens) {
            Perm h = compose(g, out[at]);
            if (seen.insert(lehmer_rank(h)).second) out.push_back(std::move(h));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Perm> coset_reps(const std::vector<Perm>& big, const std::vector<Perm>& small, std::uint64_t max_index) {
    if (big.empty()) return {};
    const int n = static_cast<int>(big[0].size());
    if (n > 10) throw Error(ErrorKind::TooLarge, "coset enumeration limited to n <= 10");
    if (small.empty() || big.size() % small.size() != 0)
        throw Error(ErrorKind::InvalidArgs, "subgroup order must divide group order");
    const std::uint64_t index = big.size() / small.size();
    if (index > max_index) throw Error(ErrorKind::TooLarge, "coset index " + std::to_string(index) + " exceeds bound");
    std::vector<Perm> sorted(big);
    std::sort(sorted.begin(), sorted.end());
    std::vector<bool> covered(factorial(n), false);
    std::vector<Perm> reps;
    for (const auto& g : sorted) {
        if (covered[lehmer_rank(g)]) continue;
        reps.push_back(g);
        for (const auto& h : small) covered[lehmer_rank(compose(g, h))] = true;
    }
    if (reps.size() != index) throw Error(ErrorKind::InvalidArgs, "second argument is not a subgroup of the first");
    return reps;
}

}  // namespace dpalg
