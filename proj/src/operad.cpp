#include "dpalg/operad.hpp"

#include <functional>
#include <sstream>

#include "dpalg/lucas.hpp"

namespace dpalg {

Operad::Operad(std::string name, FieldPtr f, int max_arity)
    : name_(std::move(name)), field_(std::move(f)), max_arity_(max_arity) {}

const Matrix& Operad::action(const Perm& sigma) const {
    const int n = static_cast<int>(sigma.size());
    if (n < 1 || n > max_arity_) throw Error(ErrorKind::ArityTooLarge, "no action stored for arity " + std::to_string(n));
    return actions_[n][lehmer_rank(sigma)];
}

Vec Operad::compose(int n, int i, int m, const Vec& x, const Vec& y) const {
    if (n + m - 1 > max_arity_) throw Error(ErrorKind::ArityTooLarge, "composite arity exceeds bound");
    if (i < 1 || i > n) throw Error(ErrorKind::InvalidArgs, "composition slot out of range");
    if (x.size() != dim(n) || y.size() != dim(m)) throw Error(ErrorKind::DimensionMismatch, "operad element size");
    const auto& table = comp_.at({n, i, m});
    Vec out = zero_vec(*field_, dim(n + m - 1));
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (x[a].is_zero()) continue;
        for (std::size_t b = 0; b < y.size(); ++b) {
            if (y[b].is_zero()) continue;
            axpy(out, x[a] * y[b], table[a * dim(m) + b]);
        }
    }
    return out;
}

Vec Operad::compose_full(int n, const Vec& x, const std::vector<std::pair<int, Vec>>& ys) const {
    if (static_cast<int>(ys.size()) != n) throw Error(ErrorKind::ShapeMismatch, "one input per slot required");
    Vec cur = x;
    int arity = n, pos = 1;
    for (const auto& [m, y] : ys) {
        cur = compose(arity, pos, m, cur, y);
        arity += m - 1;
        pos += m;
    }
    return cur;
}

Vec Operad::unit() const { return unit_vec(*field_, 1, 0); }

namespace {

void fill_actions(std::vector<std::vector<Matrix>>& actions, int max_arity,
                  const std::function<Matrix(const Perm&)>& make) {
    actions.assign(max_arity + 1, {});
    for (int n = 1; n <= max_arity; ++n) {
        auto perms = all_perms(n);
        actions[n].resize(perms.size());
        for (const auto& s : perms) actions[n][lehmer_rank(s)] = make(s);
    }
}

// Multilinear words on n letters are permutations; a word polynomial is dense over n! ranks.
Vec comb_poly(const Field& f, int n, const Perm& letters) {
    // letters[0] = 0; left-normed [[x_l0, x_l1], ..., x_l(n-1)]
    std::map<std::vector<int>, long long> poly{{{letters[0]}, 1}};
    for (int k = 1; k < n; ++k) {
        std::map<std::vector<int>, long long> next;
        for (const auto& [w, c] : poly) {
            auto a = w;
            a.push_back(letters[k]);
            next[a] += c;
            std::vector<int> b{letters[k]};
            b.insert(b.end(), w.begin(), w.end());
            next[b] -= c;
        }
        poly = std::move(next);
    }
    Vec out = zero_vec(f, factorial(n));
    for (const auto& [w, c] : poly) out[lehmer_rank(w)] += f.from_int(c);
    return out;
}

}  // namespace

std::shared_ptr<const Operad> Operad::com(FieldPtr f, int N) {
    if (N < 1 || N > 6) throw Error(ErrorKind::ArityTooLarge, "Com is available for arity <= 6");
    auto op = std::make_shared<Operad>("Com", f, N);
    op->dims_.assign(N + 1, 1);
    op->dims_[0] = 0;
    op->labels_.assign(N + 1, {});
    for (int n = 1; n <= N; ++n) op->labels_[n] = {"X" + std::to_string(n)};
    const Field& F = *f;
    fill_actions(op->actions_, N, [&](const Perm&) { return Matrix::identity(F, 1); });
    for (int n = 1; n <= N; ++n)
        for (int m = 1; n + m - 1 <= N; ++m)
            for (int i = 1; i <= n; ++i) op->comp_[{n, i, m}] = {unit_vec(F, 1, 0)};
    return op;
}

std::shared_ptr<const Operad> Operad::lie(FieldPtr f, int N) {
    if (N < 1 || N > 4) throw Error(ErrorKind::ArityTooLarge, "Lie is available for arity <= 4");
    auto op = std::make_shared<Operad>("Lie", f, N);
    const Field& F = *f;
    op->dims_.assign(N + 1, 0);
    op->labels_.assign(N + 1, {});
    // basis words (0, tau) and their expansions
    std::vector<std::vector<Perm>> basis_words(N + 1);
    std::vector<std::vector<Vec>> expansions(N + 1);
    for (int n = 1; n <= N; ++n) {
        auto taus = all_perms(n - 1);
        for (const auto& tau : taus) {
            Perm w{0};
            for (int t : tau) w.push_back(t + 1);
            basis_words[n].push_back(w);
            expansions[n].push_back(comb_poly(F, n, w));
            std::string label = "x1";
            for (int k = 1; k < n; ++k) label = "[" + label + ",x" + std::to_string(w[k] + 1) + "]";
            op->labels_[n].push_back(label);
        }
        op->dims_[n] = taus.size();
    }
    auto coords = [&](int n, const Vec& poly) {
        Vec c = zero_vec(F, basis_words[n].size());
        for (std::size_t b = 0; b < c.size(); ++b) c[b] = poly[lehmer_rank(basis_words[n][b])];
        return c;
    };
    auto words = [&](int n) { return all_perms(n); };
    fill_actions(op->actions_, N, [&](const Perm& s) {
        const int n = static_cast<int>(s.size());
        auto ws = words(n);
        Matrix m(F, op->dims_[n], op->dims_[n]);
        for (std::size_t b = 0; b < op->dims_[n]; ++b) {
            Vec poly = zero_vec(F, ws.size());
            for (std::size_t r = 0; r < ws.size(); ++r) {
                const Fe c = expansions[n][b][r];
                if (c.is_zero()) continue;
                Perm w2(n);
                for (int k = 0; k < n; ++k) w2[k] = s[ws[r][k]];
                poly[lehmer_rank(w2)] += c;
            }
            m.set_col(b, coords(n, poly));
        }
        return m;
    });
    for (int n = 1; n <= N; ++n)
        for (int m = 1; n + m - 1 <= N; ++m) {
            const int nm = n + m - 1;
            auto wn = words(n), wm = words(m);
            for (int i = 1; i <= n; ++i) {
                std::vector<Vec> table;
                for (std::size_t a = 0; a < op->dims_[n]; ++a)
                    for (std::size_t b = 0; b < op->dims_[m]; ++b) {
                        Vec poly = zero_vec(F, factorial(nm));
                        for (std::size_t r1 = 0; r1 < wn.size(); ++r1) {
                            const Fe c1 = expansions[n][a][r1];
                            if (c1.is_zero()) continue;
                            for (std::size_t r2 = 0; r2 < wm.size(); ++r2) {
                                const Fe c2 = expansions[m][b][r2];
                                if (c2.is_zero()) continue;
                                std::vector<int> w;
                                for (int L : wn[r1]) {
                                    if (L == i - 1)
                                        for (int v : wm[r2]) w.push_back(v + i - 1);
                                    else
                                        w.push_back(L > i - 1 ? L + m - 1 : L);
                                }
                                poly[lehmer_rank(w)] += c1 * c2;
                            }
                        }
                        table.push_back(coords(nm, poly));
                    }
                op->comp_[{n, i, m}] = std::move(table);
            }
        }
    return op;
}

std::vector<Vec> invariants_subspace(const Operad& op, const Composition& r) {
    const int n = total(r);
    if (n < 1 || n > op.max_arity()) throw Error(ErrorKind::ArityTooLarge, "arity out of range");
    std::vector<Matrix> blocks;
    const Matrix id = Matrix::identity(op.field(), op.dim(n));
    int start = 0;
    for (int part : r) {
        for (int t = 0; t + 1 < part; ++t) {
            Perm s = identity_perm(n);
            std::swap(s[start + t], s[start + t + 1]);
            blocks.push_back(op.action(s) - id);
        }
        start += part;
    }
    if (blocks.empty()) {
        std::vector<Vec> out;
        for (std::size_t b = 0; b < op.dim(n); ++b) out.push_back(unit_vec(op.field(), op.dim(n), b));
        return out;
    }
    return kernel_basis(vstack(blocks));
}

Vec lie_fp_element(const Operad& lie, int p) {
    if (p > lie.max_arity()) throw Error(ErrorKind::ArityTooLarge, "Lie(p) not available");
    // the sigma-translates of the left-normed bracket for sigma(1) = 1 are exactly the comb basis
    Vec out(lie.dim(p), lie.field().one());
    return out;
}

FreeGamma::FreeGamma(OperadPtr op, int d, int D) : op_(std::move(op)), d_(d), D_(D) {
    if (d < 0) throw Error(ErrorKind::InvalidArgs, "negative generator count");
    if (D > op_->max_arity()) throw Error(ErrorKind::ArityTooLarge, "truncation exceeds operad arity bound");
    basis_.assign(D + 1, {});
    for (int n = 1; n <= D; ++n) {
        const std::size_t dim = tensor_dim(n);
        if (dim == 0) continue;
        std::vector<Matrix> blocks;
        for (int t = 0; t + 1 < n; ++t) {
            Perm s = identity_perm(n);
            std::swap(s[t], s[t + 1]);
            Matrix m(field(), dim, dim);
            for (std::size_t k = 0; k < dim; ++k) {
                Vec e = unit_vec(field(), dim, k);
                m.set_col(k, sub(act(n, s, e), e));
            }
            blocks.push_back(std::move(m));
        }
        if (blocks.empty()) {
            for (std::size_t k = 0; k < dim; ++k) basis_[n].push_back(unit_vec(field(), dim, k));
        } else {
            basis_[n] = kernel_basis(vstack(blocks));
        }
    }
}

std::size_t FreeGamma::word_count(int n) const {
    std::size_t w = 1;
    for (int i = 0; i < n; ++i) w *= static_cast<std::size_t>(d_);
    return w;
}

std::size_t FreeGamma::tensor_dim(int n) const { return op_->dim(n) * word_count(n); }

Vec FreeGamma::act(int n, const Perm& sigma, const Vec& t) const {
    const std::size_t W = word_count(n);
    const Matrix& m = op_->action(sigma);
    auto inv = inverse(sigma);
    Vec out = zero_vec(field(), t.size());
    std::vector<int> letters(n), moved(n);
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
        if (t[idx].is_zero()) continue;
        const std::size_t b = idx / W;
        std::size_t w = idx % W;
        for (int k = n - 1; k >= 0; --k) {
            letters[k] = static_cast<int>(w % d_);
            w /= d_;
        }
        std::size_t w2 = 0;
        for (int j = 0; j < n; ++j) w2 = w2 * d_ + letters[inv[j]];
        for (std::size_t b2 = 0; b2 < m.rows; ++b2) {
            const Fe c = m(b2, b);
            if (!c.is_zero()) out[b2 * W + w2] += c * t[idx];
        }
    }
    return out;
}

bool FreeGamma::is_invariant(int n, const Vec& t) const {
    for (int k = 0; k + 1 < n; ++k) {
        Perm s = identity_perm(n);
        std::swap(s[k], s[k + 1]);
        if (act(n, s, t) != t) return false;
    }
    return true;
}

GammaElement FreeGamma::zero() const {
    GammaElement z;
    z.comp.resize(D_ + 1);
    for (int n = 1; n <= D_; ++n) z.comp[n] = zero_vec(field(), tensor_dim(n));
    return z;
}

GammaElement FreeGamma::generator(int j) const {
    if (j < 0 || j >= d_) throw Error(ErrorKind::InvalidArgs, "generator index out of range");
    auto z = zero();
    if (D_ >= 1) z.comp[1][j] = field().one();
    return z;
}

GammaElement FreeGamma::add(const GammaElement& a, const GammaElement& b) const {
    auto z = zero();
    for (int n = 1; n <= D_; ++n) z.comp[n] = dpalg::add(a.comp[n], b.comp[n]);
    return z;
}

GammaElement FreeGamma::scale(Fe c, const GammaElement& a) const {
    auto z = a;
    for (int n = 1; n <= D_; ++n) z.comp[n] = dpalg::scale(c, a.comp[n]);
    return z;
}

bool FreeGamma::equal(const GammaElement& a, const GammaElement& b) const {
    for (int n = 1; n <= D_; ++n)
        if (a.comp[n] != b.comp[n]) return false;
    return true;
}

bool FreeGamma::is_invariant(const GammaElement& a) const {
    for (int n = 1; n <= D_; ++n)
        if (!is_invariant(n, a.comp[n])) return false;
    return true;
}

GammaElement FreeGamma::random_element(std::mt19937_64& rng, int max_degree, bool homogeneous) const {
    auto z = zero();
    max_degree = std::min(max_degree, D_);
    if (max_degree < 1) return z;
    const int parts = homogeneous ? 1 : 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < parts; ++t) {
        const int n = 1 + static_cast<int>(rng() % max_degree);
        for (const auto& b : basis_[n]) axpy(z.comp[n], field().element(static_cast<std::uint32_t>(rng() % field().order())), b);
    }
    return z;
}

std::string FreeGamma::describe(const GammaElement& a) const {
    std::ostringstream os;
    bool any = false;
    for (int n = 1; n <= D_; ++n) {
        if (is_zero(a.comp[n])) continue;
        os << (any ? " + " : "") << "deg" << n << ":" << to_string(a.comp[n]);
        any = true;
    }
    return any ? os.str() : "0";
}

const std::vector<Perm>& FreeGamma::trace_cosets(const std::vector<std::pair<int, int>>& blocks) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = coset_cache_.find(blocks);
    if (it != coset_cache_.end()) return it->second;
    int N = 0;
    for (const auto& [m, r] : blocks) N += m * r;
    std::vector<Perm> gens;
    int off = 0;
    for (const auto& [m, r] : blocks) {
        for (int c = 0; c < r; ++c) {
            for (int t = 0; t + 1 < m; ++t) {
                Perm s = identity_perm(N);
                std::swap(s[off + c * m + t], s[off + c * m + t + 1]);
                gens.push_back(s);
            }
            if (c + 1 < r) {
                Perm s = identity_perm(N);
                for (int t = 0; t < m; ++t) std::swap(s[off + c * m + t], s[off + (c + 1) * m + t]);
                gens.push_back(s);
            }
        }
        off += m * r;
    }
    auto reps = coset_reps(all_perms(N), group_closure(gens, N));
    return coset_cache_.emplace(blocks, std::move(reps)).first->second;
}

namespace {

struct Slot {
    int m;      // degree of the homogeneous argument
    Vec c;      // element of T_m
    int mult;   // its multiplicity
};

// x o (c_1^{r_1}, ..., c_s^{r_s}) in T_N
Vec composite(const FreeGamma& g, const Vec& x, int n, const std::vector<Slot>& slots, int N) {
    const Operad& op = g.operad();
    const int d = g.d();
    // state: word (letters) -> operation vector in P(current arity)
    std::map<std::vector<int>, Vec> state{{{}, x}};
    int arity = n;
    for (const auto& sl : slots) {
        const std::size_t W = g.word_count(sl.m);
        for (int copy = 0; copy < sl.mult; ++copy) {
            std::map<std::vector<int>, Vec> next;
            for (const auto& [word, opv] : state) {
                const int pos = static_cast<int>(word.size()) + 1;
                for (std::size_t idx = 0; idx < sl.c.size(); ++idx) {
                    const Fe coef = sl.c[idx];
                    if (coef.is_zero()) continue;
                    const std::size_t b = idx / W;
                    std::size_t w = idx % W;
                    std::vector<int> letters(sl.m);
                    for (int k = sl.m - 1; k >= 0; --k) {
                        letters[k] = static_cast<int>(w % d);
                        w /= d;
                    }
                    Vec yb = unit_vec(g.field(), op.dim(sl.m), b);
                    Vec composed = scale(coef, op.compose(arity, pos, sl.m, opv, yb));
                    auto nw = word;
                    nw.insert(nw.end(), letters.begin(), letters.end());
                    auto it = next.find(nw);
                    if (it == next.end())
                        next.emplace(std::move(nw), std::move(composed));
                    else
                        it->second = add(it->second, composed);
                }
            }
            state = std::move(next);
            arity += sl.m - 1;
        }
    }
    Vec t = zero_vec(g.field(), g.tensor_dim(N));
    const std::size_t W = g.word_count(N);
    for (const auto& [word, opv] : state) {
        std::size_t w = 0;
        for (int l : word) w = w * d + l;
        for (std::size_t b = 0; b < opv.size(); ++b)
            if (!opv[b].is_zero()) t[b * W + w] += opv[b];
    }
    return t;
}

void weak_compositions(int total_, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total_ == 0) out.push_back(cur);
        return;
    }
    for (int x = 0; x <= total_; ++x) {
        cur.push_back(x);
        weak_compositions(total_ - x, parts - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

GammaElement beta_eval(const FreeGamma& g, const Vec& x, const Composition& r, const std::vector<GammaElement>& args,
                       const BetaOptions& opt) {
    if (r.size() != args.size()) throw Error(ErrorKind::ShapeMismatch, "one argument per part of r");
    const int n = total(r);
    if (n < 1 || n > g.operad().max_arity()) throw Error(ErrorKind::ArityTooLarge, "operation arity out of range");
    if (x.size() != g.operad().dim(n)) throw Error(ErrorKind::DimensionMismatch, "x is not in P(n)");
    for (int part : r)
        if (part < 0) throw Error(ErrorKind::InvalidArgs, "negative part");
    const std::size_t s = r.size();
    std::vector<std::vector<std::pair<int, Vec>>> comps(s);
    for (std::size_t i = 0; i < s; ++i)
        for (int m = 1; m <= g.D(); ++m)
            if (!is_zero(args[i].comp[m])) comps[i].push_back({m, args[i].comp[m]});
    std::vector<std::vector<std::vector<int>>> splits(s);
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<int> cur;
        weak_compositions(r[i], static_cast<int>(comps[i].size()), cur, splits[i]);
        if (splits[i].empty()) return g.zero();  // r_i > 0 on a zero argument
    }
    GammaElement out = g.zero();
    std::vector<std::size_t> choice(s, 0);
    while (true) {
        std::vector<Slot> slots;
        int N = 0;
        for (std::size_t i = 0; i < s; ++i) {
            const auto& split = splits[i][choice[i]];
            for (std::size_t k = 0; k < split.size(); ++k) {
                if (split[k] == 0) continue;
                slots.push_back({comps[i][k].first, comps[i][k].second, split[k]});
                N += comps[i][k].first * split[k];
            }
        }
        if (N > g.D()) {
            if (opt.strict_degree)
                throw Error(ErrorKind::DegreeOverflow, "degree " + std::to_string(N) + " exceeds truncation " +
                                                           std::to_string(g.D()));
        } else if (N >= 1) {
            Vec t = composite(g, x, n, slots, N);
            std::vector<std::pair<int, int>> blocks;
            for (const auto& sl : slots) blocks.push_back({sl.m, sl.mult});
            const auto& reps = g.trace_cosets(blocks);
            Vec acc = zero_vec(g.field(), t.size());
            for (const auto& tau : reps) acc = add(acc, g.act(N, tau, t));
            out.comp[N] = add(out.comp[N], acc);
        }
        std::size_t i = 0;
        while (i < s && ++choice[i] == splits[i].size()) choice[i++] = 0;
        if (i == s) break;
    }
    if (opt.check_invariance && !g.is_invariant(out))
        throw Error(ErrorKind::InvalidArgs, "beta_eval produced a non-invariant element; x is not Sigma_r-invariant");
    return out;
}

namespace {

struct Sampler {
    const FreeGamma& g;
    std::mt19937_64 rng;

    int uniform(int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Fe scalar() { return g.field().element(static_cast<std::uint32_t>(rng() % g.field().order())); }

    Composition composition(int parts, int max_total, int min_part) {
        while (true) {
            Composition r(parts);
            for (auto& x : r) x = uniform(min_part, std::max(min_part, max_total));
            const int n = total(r);
            if (n >= 1 && n <= max_total) return r;
        }
    }

    Vec invariant(const Composition& r) {
        const Operad& op = g.operad();
        Vec x = zero_vec(g.field(), op.dim(total(r)));
        const auto basis = invariants_subspace(op, r);
        for (int attempt = 0; attempt < 8 && is_zero(x) && !basis.empty(); ++attempt)
            for (const auto& b : basis) axpy(x, scalar(), b);
        return x;
    }

    // low-degree arguments so that composites stay under the truncation
    GammaElement arg(int max_degree) {
        auto z = g.zero();
        max_degree = std::min(max_degree, g.D());
        const int parts = uniform(1, 2);
        for (int t = 0; t < parts; ++t) {
            const int n = uniform(1, std::max(1, max_degree));
            const auto& basis = g.basis(n);
            if (basis.empty()) continue;
            axpy(z.comp[n], nonzero_scalar(), basis[rng() % basis.size()]);
            if (uniform(0, 1)) axpy(z.comp[n], scalar(), basis[rng() % basis.size()]);
        }
        return z;
    }

    Fe nonzero_scalar() {
        const auto q = g.field().order();
        return g.field().element(1 + static_cast<std::uint32_t>(rng() % (q - 1)));
    }

    std::vector<GammaElement> args(std::size_t s) {
        std::vector<GammaElement> a;
        for (std::size_t i = 0; i < s; ++i) a.push_back(arg(2));
        return a;
    }
};

struct Tally {
    RelationReport rep;
    void record(const FreeGamma& g, const GammaElement& lhs, const GammaElement& rhs, const std::string& what) {
        const bool ok = g.equal(lhs, rhs);
        ++rep.trials;
        if (!g.equal(lhs, g.zero())) ++rep.nontrivial;
        if (ok)
            ++rep.passed;
        else if (rep.witness.empty())
            rep.witness = what;
    }
};

std::string describe_call(const FreeGamma& g, const Vec& x, const Composition& r, const std::vector<GammaElement>& a) {
    std::ostringstream os;
    os << "x=" << to_string(x) << " r=" << to_string(r);
    for (std::size_t i = 0; i < a.size(); ++i) os << " a" << i + 1 << "=" << g.describe(a[i]);
    return os.str();
}

}  // namespace

std::vector<RelationReport> check_beta_relations(const FreeGamma& g, int trials, std::uint64_t seed) {
    const Operad& op = g.operad();
    const int top = std::min(op.max_arity(), std::max(1, g.D()));
    Sampler S{g, std::mt19937_64(seed)};
    std::vector<Tally> t(8);
    for (int k = 0; k < 8; ++k) t[k].rep.name = "beta" + std::to_string(k + 1);
    auto eval = [&](const Vec& x, const Composition& r, const std::vector<GammaElement>& a) {
        return beta_eval(g, x, r, a);
    };

    for (int trial = 0; trial < trials; ++trial) {
        // beta1: block permutation of the operation against permutation of the arguments
        {
            const int s = S.uniform(1, std::min(3, top));
            auto r = S.composition(s, top, 1);
            auto x = S.invariant(r);
            auto a = S.args(s);
            auto perms = all_perms(s);
            const Perm& rho = perms[S.rng() % perms.size()];
            const Perm rinv = inverse(rho);
            std::vector<GammaElement> a2(s);
            for (int j = 0; j < s; ++j) a2[j] = a[rinv[j]];
            auto lhs = eval(op.act(block_permutation(rho, r), x), permute_parts(r, rho), a2);
            t[0].record(g, lhs, eval(x, r, a), describe_call(g, x, r, a) + " rho=" + perm_to_string(rho));
        }
        // beta2: a zero part drops its argument
        {
            const int s = S.uniform(1, std::min(2, top));
            auto r = S.composition(s, top, 1);
            auto x = S.invariant(r);
            auto a = S.args(s);
            Composition r0{0};
            r0.insert(r0.end(), r.begin(), r.end());
            std::vector<GammaElement> a0{g.random_element(S.rng, g.D(), false)};
            a0.insert(a0.end(), a.begin(), a.end());
            t[1].record(g, eval(x, r0, a0), eval(x, r, a), describe_call(g, x, r, a));
        }
        // beta3: homogeneity of degree r_1 in the first argument
        {
            const int s = S.uniform(1, std::min(2, top));
            auto r = S.composition(s, top, 1);
            auto x = S.invariant(r);
            auto a = S.args(s);
            const Fe lam = S.nonzero_scalar();
            auto a2 = a;
            a2[0] = g.scale(lam, a[0]);
            auto lhs = eval(x, r, a2);
            auto rhs = g.scale(lam.pow(static_cast<std::uint64_t>(r[0])), eval(x, r, a));
            t[2].record(g, lhs, rhs, describe_call(g, x, r, a) + " lambda=" + to_string(lam));
        }
        // beta4: repeated arguments merge into q |> r with the symmetrised operation
        {
            const int s = S.uniform(2, std::max(2, std::min(3, top)));
            if (s > top) continue;
            auto r = S.composition(s, top, 1);
            Composition q;
            for (int left = s; left > 0;) {
                const int part = S.uniform(1, left);
                q.push_back(part);
                left -= part;
            }
            auto x = S.invariant(r);
            auto base = S.args(q.size());
            std::vector<GammaElement> a;
            for (std::size_t i = 0; i < q.size(); ++i)
                for (int c = 0; c < q[i]; ++c) a.push_back(base[i]);
            const auto big = refine(q, r);
            Vec sym = zero_vec(g.field(), x.size());
            for (const auto& sigma : coset_reps(young_subgroup(big), young_subgroup(r))) sym = add(sym, op.act(sigma, x));
            t[3].record(g, eval(x, r, a), eval(sym, big, base), describe_call(g, x, r, a) + " q=" + to_string(q));
        }
        // beta5: additivity in the first argument
        {
            const int s = S.uniform(1, std::min(2, top));
            auto r = S.composition(s, top, 1);
            auto x = S.invariant(r);
            auto a = S.args(s + 1);
            std::vector<GammaElement> merged{g.add(a[0], a[1])};
            merged.insert(merged.end(), a.begin() + 2, a.end());
            auto rhs = g.zero();
            for (int l = 0; l <= r[0]; ++l) rhs = g.add(rhs, eval(x, compose_split(r, 1, l, r[0] - l), a));
            t[4].record(g, eval(x, r, merged), rhs, describe_call(g, x, r, a));
        }
        // beta6: linearity in the operation
        {
            const int s = S.uniform(1, std::min(2, top));
            auto r = S.composition(s, top, 1);
            auto x = S.invariant(r), y = S.invariant(r);
            auto a = S.args(s);
            const Fe lam = S.scalar(), mu = S.scalar();
            auto lhs = eval(add(scale(lam, x), scale(mu, y)), r, a);
            auto rhs = g.add(g.scale(lam, eval(x, r, a)), g.scale(mu, eval(y, r, a)));
            t[5].record(g, lhs, rhs, describe_call(g, x, r, a));
        }
        // beta7: the unit
        {
            auto a = S.args(1);
            t[6].record(g, eval(op.unit(), {1}, a), a[0], "a=" + g.describe(a[0]));
        }
        // beta8: composition of operations
        {
            Composition r, ks;
            std::vector<Composition> qs;
            int tot = 0;
            for (int attempt = 0; attempt < 100; ++attempt) {
                const int s = S.uniform(1, 2);
                r = S.composition(s, std::min(2, top), 1);
                ks.assign(s, 0);
                qs.assign(s, {});
                tot = 0;
                for (int i = 0; i < s; ++i) {
                    const int si = S.uniform(1, 2);
                    qs[i] = S.composition(si, top, 1);
                    ks[i] = total(qs[i]);
                    tot += r[i] * ks[i];
                }
                if (tot <= top && total(r) <= top) break;
                tot = -1;
            }
            if (tot < 0) continue;
            const std::size_t s = r.size();
            const int n = total(r);
            auto x = S.invariant(r);
            std::vector<Vec> xs;
            std::vector<std::vector<GammaElement>> bs;
            std::vector<GammaElement> inner;
            for (std::size_t i = 0; i < s; ++i) {
                xs.push_back(S.invariant(qs[i]));
                bs.push_back(S.args(qs[i].size()));
                inner.push_back(eval(xs[i], qs[i], bs[i]));
            }
            auto lhs = eval(x, r, inner);

            std::vector<std::pair<int, Vec>> feed;
            for (std::size_t i = 0; i < s; ++i)
                for (int c = 0; c < r[i]; ++c) feed.push_back({ks[i], xs[i]});
            Vec C = op.compose_full(n, x, feed);
            Perm omega(tot);
            std::vector<Perm> hgens;
            int off = 0;
            for (std::size_t i = 0; i < s; ++i) {
                // start of block (i, j) in the output layout
                std::vector<int> jstart;
                int acc = off;
                for (int q : qs[i]) {
                    jstart.push_back(acc);
                    acc += r[i] * q;
                }
                for (int c = 0; c < r[i]; ++c) {
                    int in = off + c * ks[i];
                    for (std::size_t j = 0; j < qs[i].size(); ++j)
                        for (int u = 0; u < qs[i][j]; ++u) omega[in++] = jstart[j] + c * qs[i][j] + u;
                }
                for (std::size_t j = 0; j < qs[i].size(); ++j)
                    for (int c = 0; c < r[i]; ++c)
                        for (int u = 0; u + 1 < qs[i][j]; ++u) {
                            Perm h = identity_perm(tot);
                            std::swap(h[jstart[j] + c * qs[i][j] + u], h[jstart[j] + c * qs[i][j] + u + 1]);
                            hgens.push_back(h);
                        }
                for (int c = 0; c + 1 < r[i]; ++c) {
                    Perm h = identity_perm(tot);
                    for (std::size_t j = 0; j < qs[i].size(); ++j)
                        for (int u = 0; u < qs[i][j]; ++u)
                            std::swap(h[jstart[j] + c * qs[i][j] + u], h[jstart[j] + (c + 1) * qs[i][j] + u]);
                    hgens.push_back(h);
                }
                off = acc;
            }
            const auto rq = diamond(r, qs);
            Vec WC = op.act(omega, C);
            Vec X = zero_vec(g.field(), WC.size());
            for (const auto& tau : coset_reps(young_subgroup(rq), group_closure(hgens, tot))) X = add(X, op.act(tau, WC));
            std::vector<GammaElement> flat;
            for (const auto& b : bs) flat.insert(flat.end(), b.begin(), b.end());
            std::ostringstream what;
            what << describe_call(g, x, r, inner) << " qs=";
            for (const auto& q : qs) what << to_string(q);
            t[7].record(g, lhs, eval(X, rq, flat), what.str());
        }
    }
    std::vector<RelationReport> out;
    for (auto& x : t) out.push_back(std::move(x.rep));
    return out;
}

NormMap norm_map(const FreeGamma& g, int n) {
    const std::size_t dim = g.tensor_dim(n);
    NormMap nm{Matrix(g.field(), dim, dim), 0};
    auto perms = all_perms(n);
    for (std::size_t k = 0; k < dim; ++k) {
        Vec e = unit_vec(g.field(), dim, k);
        Vec acc = zero_vec(g.field(), dim);
        for (const auto& s : perms) acc = add(acc, g.act(n, s, e));
        nm.matrix.set_col(k, acc);
    }
    nm.rank = rank(nm.matrix);
    return nm;
}

PPowerTerm reduce_to_p_powers(const Operad& op, const Vec& x, const Composition& r) {
    const Field& f = op.field();
    const int p = f.p();
    PPowerTerm t{f.one(), x, {}, {}};
    for (std::size_t i = 0; i < r.size(); ++i) {
        long long pw = 1;
        for (int dgt : digits(r[i], p)) {
            t.coefficient = t.coefficient * f.from_int(factorial_mod(dgt, p)).inv();
            for (int c = 0; c < dgt; ++c) {
                t.Q.push_back(static_cast<int>(pw));
                t.arg_index.push_back(static_cast<int>(i));
            }
            pw *= p;
        }
    }
    return t;
}

}  // namespace dpalg
