#include "dpalg/envelopes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "dpalg/kernels.hpp"

namespace dpalg {

Vec FinRing::mul(const Vec& a, const Vec& b) const {
    Vec out = zero();
    for (std::size_t i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (b[j].is_zero()) continue;
            axpy_sparse(out, a[i] * b[j].frob(twist[i]), table[i * dim + j]);
        }
    }
    return out;
}

std::string FinRing::describe(const Vec& v) const {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (any) os << " + ";
        if (!v[i].is_one()) os << to_string(v[i]) << "*";
        os << labels[i];
        any = true;
    }
    return any ? os.str() : "0";
}

std::vector<RelationReport> check_ring(const FinRing& R, std::size_t max_exhaustive, int samples, std::uint64_t seed) {
    Checker unit("unit"), assoc("associative");
    const std::size_t d = R.dim;
    for (std::size_t i = 0; i < d; ++i) {
        const Vec e = R.basis(i);
        unit.check(R.mul(R.one(), e) == e && R.mul(e, R.one()) == e, [&] { return R.labels[i]; });
    }
    if (d <= max_exhaustive) {
        kernels::SparseTable t;
        t.dim = d;
        t.twist = R.twist;
        for (const auto& s : R.table) {
            t.entries.emplace_back();
            for (const auto& [k, c] : s) t.entries.back().push_back({k, c.code()});
        }
        const std::size_t bad = kernels::associativity_defects_parallel(t, R.F());
        assoc.check(bad == 0, [&] { return std::to_string(bad) + " basis triples fail"; });
    } else {
        std::mt19937_64 rng(seed);
        for (int s = 0; s < samples; ++s) {
            const Vec a = R.basis(rng() % d), b = R.basis(rng() % d), c = R.basis(rng() % d);
            const Vec l = R.mul(R.mul(a, b), c), r = R.mul(a, R.mul(b, c));
            assoc.check(l == r, [&] { return R.describe(a) + " " + R.describe(b) + " " + R.describe(c); },
                        !is_zero(l));
        }
    }
    return {unit.report(), assoc.report()};
}

namespace {

using Mono = std::vector<int>;
using Poly = std::map<Mono, Fe>;

void poly_add(Poly& acc, const Poly& p, Fe c) {
    for (const auto& [m, v] : p) {
        auto it = acc.find(m);
        const Fe add_v = v * c;
        if (it == acc.end()) {
            if (!add_v.is_zero()) acc.emplace(m, add_v);
        } else {
            it->second += add_v;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

// PBW straightening in U(L) (no pmap, optional weight truncation) or u(L) (pmap).
class Straightener {
public:
    Straightener(const LieAlgebra& L, const std::vector<Vec>* pmap, std::vector<int> weights, int max_weight)
        : L_(L), pmap_(pmap), w_(std::move(weights)), max_w_(max_weight) {}

    int weight(const Mono& m) const {
        int s = 0;
        for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * w_[i];
        return s;
    }

    // m * e_j
    const Poly& mul_gen(const Mono& m, int j) {
        auto key = std::make_pair(m, j);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        if (++steps_ > 50'000'000) throw Error(ErrorKind::TooLarge, "PBW straightening did not terminate");
        Poly out;
        const Field& F = L_.F();
        int last = -1;
        for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
            if (m[i] > 0) {
                last = i;
                break;
            }
        if (last <= j) {
            Mono m2 = m;
            ++m2[j];
            if (pmap_ && m2[j] == F.p()) {
                m2[j] = 0;
                const Vec& pv = (*pmap_)[j];
                for (std::size_t k = 0; k < pv.size(); ++k)
                    if (!pv[k].is_zero()) poly_add(out, mul_gen(m2, static_cast<int>(k)), pv[k]);
            } else if (max_w_ < 0 || weight(m2) <= max_w_) {
                out.emplace(m2, F.one());
            }
        } else {
            // m = m' e_l with l > j: m' e_l e_j = (m' e_j) e_l + m' [e_l, e_j]
            Mono m1 = m;
            --m1[last];
            const Poly first = mul_gen(m1, j);
            for (const auto& [mono, c] : first) poly_add(out, mul_gen(mono, last), c);
            const Vec& b = L_.bracket[last * L_.dim + j];
            for (std::size_t k = 0; k < b.size(); ++k)
                if (!b[k].is_zero()) poly_add(out, mul_gen(m1, static_cast<int>(k)), b[k]);
        }
        return cache_.emplace(std::move(key), std::move(out)).first->second;
    }

    Poly mul(const Mono& a, const Mono& b) {
        Poly cur{{a, L_.F().one()}};
        for (std::size_t j = 0; j < b.size(); ++j)
            for (int t = 0; t < b[j]; ++t) {
                Poly next;
                for (const auto& [m, c] : cur) poly_add(next, mul_gen(m, static_cast<int>(j)), c);
                cur = std::move(next);
            }
        return cur;
    }

private:
    const LieAlgebra& L_;
    const std::vector<Vec>* pmap_;
    std::vector<int> w_;
    int max_w_;
    std::map<std::pair<Mono, int>, Poly> cache_;
    long long steps_ = 0;
};

std::string mono_label(const LieAlgebra& L, const Mono& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += L.labels[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

FinRing pbw_ring(const LieAlgebra& L, const std::vector<Mono>& monos, Straightener& st, const std::string& name) {
    FinRing R;
    R.field = L.field;
    R.name = name;
    R.dim = monos.size();
    std::map<Mono, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    for (const auto& m : monos) R.labels.push_back(mono_label(L, m));
    R.twist.assign(R.dim, 0);
    R.unit = index.at(Mono(L.dim, 0));
    R.table.resize(R.dim * R.dim);
    for (std::size_t i = 0; i < R.dim; ++i)
        for (std::size_t j = 0; j < R.dim; ++j)
            for (const auto& [m, c] : st.mul(monos[i], monos[j])) {
                auto it = index.find(m);
                if (it == index.end()) throw Error(ErrorKind::TooLarge, "straightening left the PBW basis");
                R.table[i * R.dim + j].push_back({static_cast<std::uint32_t>(it->second), c});
            }
    for (std::size_t g = 0; g < L.dim; ++g) {
        Mono m(L.dim, 0);
        m[g] = 1;
        auto it = index.find(m);
        if (it == index.end()) throw Error(ErrorKind::TruncationTooSmall, "a generator lies above the truncation");
        R.gens.push_back(it->second);
    }
    for (const auto& m : monos) {
        std::vector<std::size_t> w;
        for (std::size_t g = 0; g < m.size(); ++g)
            for (int t = 0; t < m[g]; ++t) w.push_back(g);
        R.words.push_back(std::move(w));
    }
    return R;
}

}  // namespace

FinRing u_of(const RestrictedLie& L) {
    const int p = L.F().p();
    double size = 1;
    for (std::size_t i = 0; i < L.dim; ++i) size *= p;
    if (L.dim > 4 || size > 1e4) throw Error(ErrorKind::TooLarge, "u(L) needs dim <= 4 and p^dim <= 10^4");
    std::vector<Mono> monos;
    Mono m(L.dim, 0);
    // restricted PBW monomials by total degree, then lexicographically descending
    std::vector<Mono> all;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == L.dim) {
            all.push_back(m);
            return;
        }
        for (int a = p - 1; a >= 0; --a) {
            m[i] = a;
            rec(i + 1);
        }
    };
    rec(0);
    std::stable_sort(all.begin(), all.end(), [](const Mono& a, const Mono& b) {
        int sa = 0, sb = 0;
        for (int x : a) sa += x;
        for (int x : b) sb += x;
        return sa < sb;
    });
    Straightener st(L, &L.pmap, std::vector<int>(L.dim, 1), -1);
    FinRing R = pbw_ring(L, all, st, "u");
    R.grade.assign(R.dim, 0);
    return R;
}

std::vector<int> lie_weights(const LieAlgebra& L) {
    std::vector<int> w(L.dim, 1);
    for (std::size_t round = 0; round <= L.dim + 1; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < L.dim; ++i)
            for (std::size_t j = 0; j < L.dim; ++j) {
                const Vec& b = L.bracket[i * L.dim + j];
                for (std::size_t k = 0; k < b.size(); ++k)
                    if (!b[k].is_zero() && w[k] < w[i] + w[j]) {
                        w[k] = w[i] + w[j];
                        changed = true;
                    }
            }
        if (!changed) return w;
    }
    throw Error(ErrorKind::NotNilpotentBasis, "no weight grading makes the bracket increase weight");
}

FinRing U_of(const LieAlgebra& L, int D) {
    if (D < 0) throw Error(ErrorKind::InvalidArgs, "negative truncation");
    const auto w = lie_weights(L);
    std::vector<Mono> all;
    Mono m(L.dim, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (all.size() > 10000) throw Error(ErrorKind::TooLarge, "truncated U(L) exceeds 10^4 basis elements");
        if (i == L.dim) {
            all.push_back(m);
            return;
        }
        for (int a = left / w[i]; a >= 0; --a) {
            m[i] = a;
            rec(i + 1, left - a * w[i]);
        }
        m[i] = 0;
    };
    rec(0, D);
    auto weight = [&](const Mono& x) {
        int s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * w[i];
        return s;
    };
    std::stable_sort(all.begin(), all.end(), [&](const Mono& a, const Mono& b) { return weight(a) < weight(b); });
    Straightener st(L, nullptr, w, D);
    FinRing R = pbw_ring(L, all, st, "U");
    for (const auto& x : all) R.grade.push_back(weight(x));
    R.max_grade = D;
    return R;
}

FinRing w_of(const RestrictedLie& L, int N) {
    if (N < 0) throw Error(ErrorKind::InvalidArgs, "negative truncation");
    const FinRing u = u_of(L);
    const std::size_t du = u.dim;
    if (du * (N + 1) > 10000) throw Error(ErrorKind::TooLarge, "w(L) exceeds 10^4 basis elements");
    FinRing R;
    R.field = L.field;
    R.name = "w";
    R.dim = du * (N + 1);
    R.unit = u.unit;
    R.max_grade = N;
    for (int a = 0; a <= N; ++a)
        for (std::size_t m = 0; m < du; ++m) {
            std::string f = a == 0 ? "" : (a == 1 ? "f" : "f^" + std::to_string(a));
            R.labels.push_back(f.empty() ? u.labels[m] : (m == u.unit ? f : f + "*" + u.labels[m]));
            R.twist.push_back(a);
            R.grade.push_back(a);
        }
    R.table.resize(R.dim * R.dim);
    for (int a = 0; a <= N; ++a)
        for (std::size_t mu = 0; mu < du; ++mu)
            for (int b = 0; b <= N; ++b)
                for (std::size_t mv = 0; mv < du; ++mv) {
                    auto& cell = R.table[(a * du + mu) * R.dim + (b * du + mv)];
                    if (b == 0) {
                        for (const auto& [k, c] : u.table[mu * du + mv]) cell.push_back({static_cast<std::uint32_t>(a * du + k), c});
                    } else if (mu == u.unit && a + b <= N) {
                        cell.push_back({static_cast<std::uint32_t>((a + b) * du + mv), L.F().one()});
                    }
                }
    for (auto g : u.gens) R.gens.push_back(g);
    if (N >= 1) R.gens.push_back(du + u.unit);
    for (int a = 0; a <= N; ++a)
        for (std::size_t m = 0; m < du; ++m) {
            std::vector<std::size_t> word(a, L.dim);  // the f generator is gens[dim L]
            for (auto g : u.words[m]) word.push_back(g);
            R.words.push_back(std::move(word));
        }
    return R;
}

FinRing augmented_ring(const CommAlgebra& A) {
    FinRing R;
    R.field = A.field;
    R.name = "aug";
    R.dim = 1 + A.dim;
    R.labels.push_back("1");
    for (const auto& l : A.labels) R.labels.push_back(l);
    R.twist.assign(R.dim, 0);
    R.grade.assign(R.dim, 0);
    R.unit = 0;
    R.table.resize(R.dim * R.dim);
    const Fe one = A.F().one();
    for (std::size_t i = 0; i < R.dim; ++i)
        for (std::size_t j = 0; j < R.dim; ++j) {
            auto& cell = R.table[i * R.dim + j];
            if (i == 0)
                cell.push_back({static_cast<std::uint32_t>(j), one});
            else if (j == 0)
                cell.push_back({static_cast<std::uint32_t>(i), one});
            else
                for (const auto& [k, c] : A.mult[(i - 1) * A.dim + (j - 1)]) cell.push_back({k + 1, c});
        }
    for (std::size_t i = 0; i < A.dim; ++i) {
        R.gens.push_back(i + 1);
    }
    R.words.push_back({});
    for (std::size_t i = 0; i < A.dim; ++i) R.words.push_back({i});
    return R;
}

FinRing v_of(const PdComAlgebra& A, int N) {
    if (N < 0) throw Error(ErrorKind::InvalidArgs, "negative truncation");
    const FinRing aug = augmented_ring(A);
    const std::size_t da = aug.dim;
    if (da * (N + 1) > 10000) throw Error(ErrorKind::TooLarge, "V(A) exceeds 10^4 basis elements");
    FinRing R;
    R.field = A.field;
    R.name = "V";
    R.dim = da * (N + 1);
    R.unit = 0;
    R.max_grade = N;
    for (int k = 0; k <= N; ++k)
        for (std::size_t a = 0; a < da; ++a) {
            std::string f = k == 0 ? "" : (k == 1 ? "f" : "f^" + std::to_string(k));
            R.labels.push_back(f.empty() ? aug.labels[a] : (a == 0 ? f : aug.labels[a] + "*" + f));
            R.twist.push_back(k);
            R.grade.push_back(k);
        }
    R.table.resize(R.dim * R.dim);
    const Fe one = A.F().one();
    for (int k = 0; k <= N; ++k)
        for (std::size_t a = 0; a < da; ++a)
            for (int m = 0; m <= N; ++m)
                for (std::size_t b = 0; b < da; ++b) {
                    auto& cell = R.table[(k * da + a) * R.dim + (m * da + b)];
                    if (k == 0) {
                        for (const auto& [c, v] : aug.table[a * da + b]) cell.push_back({static_cast<std::uint32_t>(m * da + c), v});
                    } else if (b == 0 && k + m <= N) {
                        cell.push_back({static_cast<std::uint32_t>((k + m) * da + a), one});
                    }
                }
    for (auto g : aug.gens) R.gens.push_back(g);
    if (N >= 1) R.gens.push_back(da);
    for (int k = 0; k <= N; ++k)
        for (std::size_t a = 0; a < da; ++a) {
            std::vector<std::size_t> word = aug.words[a];
            for (int t = 0; t < k; ++t) word.push_back(A.dim);  // the f generator is gens[dim A]
            R.words.push_back(std::move(word));
        }
    return R;
}

std::vector<RelationReport> check_ring_map(const FinRing& src, const FinRing& dst, const Matrix& phi) {
    Checker unit("unital"), mult("multiplicative");
    unit.check(phi.col(src.unit) == dst.one(), [&] { return "1 -> " + dst.describe(phi.col(src.unit)); });
    for (std::size_t i = 0; i < src.dim; ++i)
        for (std::size_t j = 0; j < src.dim; ++j) {
            if (src.truncated_pair(i, j)) continue;
            const Vec lhs = phi.apply(src.mul(src.basis(i), src.basis(j)));
            const Vec rhs = dst.mul(phi.col(i), phi.col(j));
            mult.check(lhs == rhs, [&] { return src.labels[i] + " * " + src.labels[j]; }, !is_zero(lhs));
        }
    return {unit.report(), mult.report()};
}

namespace {

// image of every source basis word, given images of the source generators
Matrix map_from_generators(const FinRing& src, const FinRing& dst, const std::vector<Vec>& gen_images) {
    Matrix m(dst.F(), dst.dim, src.dim);
    for (std::size_t b = 0; b < src.dim; ++b) {
        Vec v = dst.one();
        for (auto g : src.words[b]) v = dst.mul(v, gen_images.at(g));
        m.set_col(b, v);
    }
    return m;
}

}  // namespace

Matrix theta_lie(const FinRing& U, const FinRing& w) {
    std::vector<Vec> gi;
    for (std::size_t g = 0; g < U.gens.size(); ++g) gi.push_back(w.basis(w.gens.at(g)));
    return map_from_generators(U, w, gi);
}

Matrix U_to_u(const FinRing& U, const FinRing& u) {
    std::vector<Vec> gi;
    for (std::size_t g = 0; g < U.gens.size(); ++g) gi.push_back(u.basis(u.gens.at(g)));
    return map_from_generators(U, u, gi);
}

Matrix theta_com(const FinRing& aug, const FinRing& V) {
    Matrix m(V.F(), V.dim, aug.dim);
    for (std::size_t a = 0; a < aug.dim; ++a) m(a, a) = V.F().one();
    return m;
}

namespace {

// lin: images of the base-algebra basis (as elements of the base of dst), gens of dst indexed like the base basis
Vec lift_linear(const FinRing& dst, const Vec& coords) {
    Vec v = dst.zero();
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (!coords[k].is_zero()) v[dst.gens.at(k)] += coords[k];
    return v;
}

}  // namespace

Matrix u_map(const FinRing& uB, const FinRing& uA, const Matrix& g) {
    std::vector<Vec> gi;
    for (std::size_t i = 0; i < g.cols; ++i) gi.push_back(lift_linear(uA, g.col(i)));
    return map_from_generators(uB, uA, gi);
}

Matrix w_map(const FinRing& wB, const FinRing& wA, const Matrix& g) {
    std::vector<Vec> gi;
    for (std::size_t i = 0; i < g.cols; ++i) gi.push_back(lift_linear(wA, g.col(i)));
    if (wB.gens.size() > g.cols) gi.push_back(wA.basis(wA.gens.at(g.rows)));
    return map_from_generators(wB, wA, gi);
}

Matrix v_map(const FinRing& VB, const FinRing& VA, const Matrix& g) {
    std::vector<Vec> gi;
    for (std::size_t i = 0; i < g.cols; ++i) gi.push_back(lift_linear(VA, g.col(i)));
    if (VB.gens.size() > g.cols) gi.push_back(VA.basis(VA.gens.at(g.rows)));
    return map_from_generators(VB, VA, gi);
}

Vec RingModule::act(const FinRing& R, const Vec& r, const Vec& m) const {
    Vec out = zero_vec(R.F(), dim);
    for (std::size_t i = 0; i < R.dim; ++i)
        if (!r[i].is_zero()) axpy(out, r[i], action[i].apply(frob_vec(m, R.twist[i])));
    return out;
}

std::vector<RelationReport> check_ring_module(const FinRing& R, const RingModule& M) {
    Checker unit("unit-acts"), law("module-law");
    if (M.action.size() != R.dim) throw Error(ErrorKind::ShapeMismatch, "one action matrix per ring basis element");
    unit.check(M.action[R.unit].is_identity(), [] { return std::string("the unit does not act as identity"); });
    for (std::size_t i = 0; i < R.dim; ++i)
        for (std::size_t j = 0; j < R.dim; ++j) {
            if (R.truncated_pair(i, j)) continue;
            // e_i (e_j m) = A_i Frob^{t_i}(A_j) Frob^{t_i + t_j}(m)
            const Matrix rhs = M.action[i] * M.action[j].frob(R.twist[i]);
            Matrix lhs(R.F(), M.dim, M.dim);
            bool twist_ok = true;
            for (const auto& [k, c] : R.table[i * R.dim + j]) {
                lhs = lhs + M.action[k].scaled(c);
                twist_ok = twist_ok && R.twist[k] == R.twist[i] + R.twist[j];
            }
            law.check(twist_ok && lhs == rhs, [&] { return R.labels[i] + " * " + R.labels[j]; }, !rhs.is_zero());
        }
    return {unit.report(), law.report()};
}

RingModule regular_module(const FinRing& R) {
    RingModule M;
    M.dim = R.dim;
    for (std::size_t i = 0; i < R.dim; ++i) {
        Matrix a(R.F(), R.dim, R.dim);
        for (std::size_t j = 0; j < R.dim; ++j)
            for (const auto& [k, c] : R.table[i * R.dim + j]) a(k, j) += c;
        M.action.push_back(std::move(a));
    }
    return M;
}

RingModule restrict_module(const FinRing& src, const Matrix& phi, const FinRing& dst, const RingModule& M) {
    RingModule out;
    out.dim = M.dim;
    for (std::size_t s = 0; s < src.dim; ++s) {
        Matrix a(src.F(), M.dim, M.dim);
        for (std::size_t k = 0; k < dst.dim; ++k) {
            const Fe c = phi(k, s);
            if (c.is_zero()) continue;
            if (dst.twist[k] != src.twist[s])
                throw Error(ErrorKind::InvalidArgs, "ring map does not preserve the Frobenius twist");
            a = a + M.action[k].scaled(c);
        }
        out.action.push_back(std::move(a));
    }
    return out;
}

Vec operadic_symbol_to_ring(const Operad& op, const FinRing& target, std::size_t base_dim, const OperadicSymbol& s) {
    const Field& F = op.field();
    const int n = total(s.r);
    if (n < 1 || n > op.max_arity() || s.x.size() != op.dim(n))
        throw Error(ErrorKind::UnsupportedSymbol, "operation outside the operad data");
    if (s.args.size() + 1 != s.r.size()) throw Error(ErrorKind::UnsupportedSymbol, "one argument per part but the last");
    const bool com = op.name() == "Com";
    // scalar c with x = c * expected, or nullopt
    auto multiple_of = [&](const Vec& expected) -> std::optional<Fe> {
        std::size_t lead = expected.size();
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (!expected[i].is_zero()) {
                lead = i;
                break;
            }
        if (lead == expected.size()) return std::nullopt;
        const Fe c = s.x[lead] / expected[lead];
        if (scale(c, expected) != s.x) return std::nullopt;
        return c;
    };
    if (s.r == Composition{1}) return scale(s.x[0], target.one());
    if (s.r == Composition{1, 1}) {
        const Vec& b = s.args[0];
        if (b.size() != base_dim) throw Error(ErrorKind::DimensionMismatch, "argument is not in the base algebra");
        Vec out = target.zero();
        for (std::size_t k = 0; k < base_dim; ++k)
            if (!b[k].is_zero()) out[target.gens.at(k)] += s.x[0] * b[k];
        return out;
    }
    if (s.r == Composition{F.p()}) {
        const auto c = multiple_of(com ? unit_vec(F, 1, 0) : lie_fp_element(op, F.p()));
        if (!c) throw Error(ErrorKind::UnsupportedSymbol, "arity-p operation is not the p-th power operation");
        if (target.gens.size() <= base_dim) throw Error(ErrorKind::TruncationTooSmall, "f needs f-degree truncation >= 1");
        return scale(*c, target.basis(target.gens[base_dim]));
    }
    throw Error(ErrorKind::UnsupportedSymbol, "symbol " + to_string(s.r) + " is not in the generating family");
}

}  // namespace dpalg
