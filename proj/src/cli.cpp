#include "dpalg/cli.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "dpalg/beckmod.hpp"
#include "dpalg/envelopes.hpp"
#include "dpalg/error.hpp"
#include "dpalg/kahler.hpp"
#include "dpalg/operad.hpp"
#include "dpalg/pdcom.hpp"
#include "dpalg/rlie.hpp"

namespace dpalg::cli {

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& msg) {
    throw Error(ErrorKind::ValidationError, where + ": " + msg);
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const std::map<std::string, std::set<std::string>> object_keys = {
    {"comm", {"name", "kind", "preset", "generators", "relations", "degree", "dim", "labels", "mult"}},
    {"pdcom", {"name", "kind", "preset", "generators", "relations", "degree", "dim", "labels", "mult", "pi"}},
    {"lie", {"name", "kind", "dim", "labels", "bracket"}},
    {"rlie", {"name", "kind", "preset", "dim", "pmap", "labels", "bracket", "of", "N"}},
    {"beck_com", {"name", "kind", "over", "preset", "dim", "action", "pi"}},
    {"beck_lie", {"name", "kind", "over", "preset", "dim", "action", "f"}},
    {"bimodule", {"name", "kind", "over", "preset"}},
    {"map", {"name", "kind", "from", "to", "matrix"}},
};

const std::map<std::string, std::set<std::string>> task_keys = {
    {"check", {"task", "object", "trials"}},
    {"derive", {"task", "module", "export"}},
    {"envelope", {"task", "object", "ring", "N", "D", "export"}},
    {"omega", {"task", "object", "N", "D", "module", "export"}},
    {"compare",
     {"task", "kind", "object", "module", "map", "bimodule", "N", "D", "degree", "rho"}},
    {"relations", {"task", "suite", "operad", "generators", "degree", "trials"}},
    {"beta", {"task", "operad", "generators", "degree", "x", "r", "args"}},
};

// references from an object or task entry to other objects
const std::vector<std::string> reference_keys = {"over", "from", "to", "of", "object", "module", "map"};

struct Locator {
    const std::string& text;
    [[noreturn]] void unknown_key(const std::string& where, const std::string& key) const {
        const std::size_t pos = text.find("\"" + key + "\"");
        std::string at;
        if (pos != std::string::npos) {
            auto [l, c] = line_col(text, pos);
            at = "line " + std::to_string(l) + ", column " + std::to_string(c) + ": ";
        }
        throw Error(ErrorKind::ParseError, at + where + ": unknown key '" + key + "'");
    }
    void keys(const json& j, const std::string& where, const std::set<std::string>& allowed) const {
        for (const auto& [k, v] : j.items())
            if (!allowed.count(k)) unknown_key(where, k);
    }
};

int get_int(const json& j, const std::string& key, const std::string& where, std::optional<int> def = {}) {
    if (!j.contains(key)) {
        if (def) return *def;
        invalid(where, "missing '" + key + "'");
    }
    if (!j[key].is_number_integer()) invalid(where, "'" + key + "' must be an integer");
    return j[key].get<int>();
}

std::string get_str(const json& j, const std::string& key, const std::string& where,
                    std::optional<std::string> def = {}) {
    if (!j.contains(key)) {
        if (def) return *def;
        invalid(where, "missing '" + key + "'");
    }
    if (!j[key].is_string()) invalid(where, "'" + key + "' must be a string");
    return j[key].get<std::string>();
}

Fe scalar(const Field& F, const json& j, const std::string& where) {
    if (j.is_number_integer()) return F.from_int(j.get<long long>());
    if (j.is_array()) {
        if (j.size() > static_cast<std::size_t>(F.k())) invalid(where, "too many coordinates for the field");
        std::vector<int> c;
        for (const auto& x : j) {
            if (!x.is_number_integer()) invalid(where, "coordinates must be integers");
            const long long v = x.get<long long>() % F.p();
            c.push_back(static_cast<int>(v < 0 ? v + F.p() : v));
        }
        c.resize(F.k(), 0);
        return F.from_coeffs(c);
    }
    invalid(where, "scalar must be an integer or a coordinate list");
}

json scalar_json(Fe a) {
    if (a.field()->k() == 1) return a.code();
    return a.coeffs();
}

Vec vec(const Field& F, const json& j, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) invalid(where, "expected " + std::to_string(n) + " scalars");
    Vec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(scalar(F, j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

json vec_json(const Vec& v) {
    json out = json::array();
    for (Fe a : v) out.push_back(scalar_json(a));
    return out;
}

Matrix matrix(const Field& F, const json& j, const std::string& where, std::optional<std::size_t> rows = {},
              std::optional<std::size_t> cols = {}) {
    if (!j.is_object()) invalid(where, "matrix must be {rows, cols, data}");
    for (const auto& [k, v] : j.items())
        if (k != "rows" && k != "cols" && k != "data") invalid(where, "unknown matrix key '" + k + "'");
    const auto r = static_cast<std::size_t>(get_int(j, "rows", where));
    const auto c = static_cast<std::size_t>(get_int(j, "cols", where));
    if ((rows && *rows != r) || (cols && *cols != c))
        invalid(where, "expected a " + std::to_string(rows.value_or(r)) + "x" + std::to_string(cols.value_or(c)) +
                           " matrix");
    if (!j.contains("data") || !j["data"].is_array() || j["data"].size() != r) invalid(where, "data must have rows");
    Matrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const Vec row = vec(F, j["data"][i], c, where + ".data[" + std::to_string(i) + "]");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = row[k];
    }
    return m;
}

std::vector<std::string> labels(const json& j, std::size_t dim, const std::string& prefix, const std::string& where) {
    std::vector<std::string> out;
    if (j.contains("labels")) {
        if (!j["labels"].is_array() || j["labels"].size() != dim) invalid(where, "labels must match dim");
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) invalid(where, "labels must be strings");
            out.push_back(l.get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < dim; ++i) out.push_back(prefix + std::to_string(i + 1));
    }
    return out;
}

// [[i, j, [coeffs]], ...]; sign = -1 fills the antisymmetric entry
std::vector<Vec> structure(const Field& F, const json& j, std::size_t dim, int sign, const std::string& where) {
    std::vector<Vec> table(dim * dim, zero_vec(F, dim));
    if (!j.is_array()) invalid(where, "expected a list of [i, j, coefficients]");
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string w = where + "[" + std::to_string(t) + "]";
        const auto& e = j[t];
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
            invalid(w, "expected [i, j, coefficients]");
        const long long a = e[0].get<long long>(), b = e[1].get<long long>();
        if (a < 0 || b < 0 || a >= static_cast<long long>(dim) || b >= static_cast<long long>(dim))
            invalid(w, "index out of range");
        const Vec v = vec(F, e[2], dim, w);
        if (sign < 0 && a == b && !is_zero(v)) invalid(w, "[e_i, e_i] must vanish");
        table[a * dim + b] = v;
        table[b * dim + a] = sign < 0 ? scale(F.from_int(-1), v) : v;
    }
    return table;
}

std::vector<Vec> per_basis(const Field& F, const json& j, std::size_t dim, const std::string& where) {
    if (!j.is_array() || j.size() != dim) invalid(where, "expected one vector per basis element");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim; ++i) out.push_back(vec(F, j[i], dim, where + "[" + std::to_string(i) + "]"));
    return out;
}

Polynomial polynomial(const Field& F, const json& j, int g, const std::string& where) {
    if (!j.is_array()) invalid(where, "polynomial must be a list of [coefficient, exponents]");
    Polynomial out;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2 || !term[1].is_array() || term[1].size() != static_cast<std::size_t>(g))
            invalid(where, "term must be [coefficient, exponents]");
        std::vector<int> e;
        for (const auto& x : term[1]) {
            if (!x.is_number_integer() || x.get<int>() < 0) invalid(where, "exponents must be non-negative");
            e.push_back(x.get<int>());
        }
        out.push_back({scalar(F, term[0], where), e});
    }
    return out;
}

/// A built object of the job.
struct Obj {
    std::string name;
    std::string kind;
    std::optional<CommAlgebra> comm;   // comm, pdcom
    std::optional<PdComAlgebra> pd;    // pdcom
    std::optional<LieAlgebra> lie;     // lie, rlie
    std::optional<RestrictedLie> rlie; // rlie
    std::optional<BeckModuleCom> bcom;
    std::optional<BeckModuleLie> blie;
    std::optional<FinRing> ring;  // bimodule: u(L)
    std::optional<Bimodule> bimod;
    std::optional<Matrix> map;
    std::optional<PdEnvelope> env;      // pdcom preset envelope
    std::shared_ptr<FreePdCom> free;    // pdcom preset free
    std::optional<PEnvelope> penv;      // rlie preset p_envelope
    std::optional<LieAlgebra> penv_source;
    std::string over, from, to;
};

using Store = std::map<std::string, Obj>;

const Obj& ref(const Store& s, const std::string& name, const std::string& where) {
    auto it = s.find(name);
    if (it == s.end()) invalid(where, "unknown object '" + name + "'");
    return it->second;
}

const PdComAlgebra& need_pd(const Obj& o, const std::string& where) {
    if (!o.pd) invalid(where, "'" + o.name + "' is not a pdcom algebra");
    return *o.pd;
}
const RestrictedLie& need_rlie(const Obj& o, const std::string& where) {
    if (!o.rlie) invalid(where, "'" + o.name + "' is not a restricted Lie algebra");
    return *o.rlie;
}

BeckModuleCom regular_beck_com(const PdComAlgebra& A) {
    const FinRing aug = augmented_ring(A);
    const RingModule reg = regular_module(aug);
    BeckModuleCom M;
    M.dim = aug.dim;
    for (std::size_t i = 0; i < A.dim; ++i) M.action.push_back(reg.action[1 + i]);
    M.pi = SemilinearMap{Matrix(A.F(), aug.dim, aug.dim), 1};
    return M;
}

BeckModuleLie regular_beck_lie(const RestrictedLie& L) {
    const FinRing u = u_of(L);
    const RingModule reg = regular_module(u);
    RestrictedModule M;
    M.dim = u.dim;
    for (std::size_t i = 0; i < L.dim; ++i) M.action.push_back(reg.action[u.gens[i]]);
    M.f = SemilinearMap{Matrix(L.F(), u.dim, u.dim), 1};
    return BeckModuleLie{M};
}

Obj build(const FieldPtr& f, const json& j, const Store& s, std::size_t index) {
    const Field& F = *f;
    Obj o;
    o.name = j["name"].get<std::string>();
    o.kind = j["kind"].get<std::string>();
    const std::string where = "objects[" + std::to_string(index) + "] '" + o.name + "'";
    const std::string preset = get_str(j, "preset", where, "");

    if (o.kind == "comm" || o.kind == "pdcom") {
        if (preset == "free" && o.kind == "pdcom") {
            o.free = std::make_shared<FreePdCom>(f, get_int(j, "generators", where), get_int(j, "degree", where));
            o.pd = o.free->algebra();
        } else if (preset == "envelope" && o.kind == "pdcom") {
            const int g = get_int(j, "generators", where);
            std::vector<Polynomial> rels;
            if (j.contains("relations"))
                for (const auto& r : j["relations"]) rels.push_back(polynomial(F, r, g, where + ".relations"));
            o.env = pd_envelope(f, g, rels, get_int(j, "degree", where));
            o.pd = o.env->algebra;
        } else if (preset == "monomial" && o.kind == "comm") {
            const int g = get_int(j, "generators", where);
            std::vector<std::vector<int>> rels;
            if (j.contains("relations"))
                for (const auto& r : j["relations"]) rels.push_back(r.get<std::vector<int>>());
            o.comm = monomial_algebra(f, g, rels, get_int(j, "degree", where));
        } else if (preset.empty()) {
            const auto dim = static_cast<std::size_t>(get_int(j, "dim", where));
            const auto table = structure(F, j.value("mult", json::array()), dim, 1, where + ".mult");
            CommAlgebra a = make_comm_algebra(f, labels(j, dim, "e", where),
                                              [&](std::size_t a, std::size_t b) { return table[a * dim + b]; });
            if (o.kind == "pdcom") {
                PdComAlgebra pd;
                static_cast<CommAlgebra&>(pd) = a;
                if (!j.contains("pi")) invalid(where, "missing 'pi'");
                pd.pi = per_basis(F, j["pi"], dim, where + ".pi");
                o.pd = pd;
            } else {
                o.comm = a;
            }
        } else {
            invalid(where, "unknown preset '" + preset + "'");
        }
        if (o.pd) o.comm = static_cast<const CommAlgebra&>(*o.pd);
    } else if (o.kind == "lie" || o.kind == "rlie") {
        if (o.kind == "rlie" && preset == "sl2") {
            o.rlie = sl2(f);
        } else if (o.kind == "rlie" && preset == "heisenberg") {
            o.rlie = heisenberg(f);
        } else if (o.kind == "rlie" && preset == "abelian") {
            const auto dim = static_cast<std::size_t>(get_int(j, "dim", where));
            std::vector<Vec> pv;
            if (j.contains("pmap")) pv = per_basis(F, j["pmap"], dim, where + ".pmap");
            o.rlie = abelian(f, dim, pv);
        } else if (o.kind == "rlie" && preset == "p_envelope") {
            const Obj& src = ref(s, get_str(j, "of", where), where);
            if (!src.lie) invalid(where, "'of' must be a Lie algebra");
            o.penv = p_envelope(*src.lie, get_int(j, "N", where, 1));
            o.penv_source = *src.lie;
            o.rlie = o.penv->hat;
        } else if (preset.empty()) {
            const auto dim = static_cast<std::size_t>(get_int(j, "dim", where));
            LieAlgebra L;
            L.field = f;
            L.dim = dim;
            L.labels = labels(j, dim, "e", where);
            L.bracket = structure(F, j.value("bracket", json::array()), dim, -1, where + ".bracket");
            if (o.kind == "rlie") {
                RestrictedLie R;
                static_cast<LieAlgebra&>(R) = L;
                if (!j.contains("pmap")) invalid(where, "missing 'pmap'");
                R.pmap = per_basis(F, j["pmap"], dim, where + ".pmap");
                o.rlie = R;
            } else {
                o.lie = L;
            }
        } else {
            invalid(where, "unknown preset '" + preset + "'");
        }
        if (o.rlie) o.lie = static_cast<const LieAlgebra&>(*o.rlie);
    } else if (o.kind == "beck_com") {
        o.over = get_str(j, "over", where);
        const PdComAlgebra& A = need_pd(ref(s, o.over, where), where);
        if (preset == "trivial") {
            BeckModuleCom M;
            M.dim = 1;
            M.action.assign(A.dim, Matrix(F, 1, 1));
            M.pi = SemilinearMap{Matrix(F, 1, 1), 1};
            if (j.contains("pi")) M.pi.matrix(0, 0) = scalar(F, j["pi"], where + ".pi");
            o.bcom = M;
        } else if (preset == "regular") {
            o.bcom = regular_beck_com(A);
        } else if (preset == "zero") {
            o.bcom = zero_beck_com(A);
        } else if (preset.empty()) {
            BeckModuleCom M;
            M.dim = static_cast<std::size_t>(get_int(j, "dim", where));
            if (!j.contains("action") || !j["action"].is_array() || j["action"].size() != A.dim)
                invalid(where, "action needs one matrix per basis element of '" + o.over + "'");
            for (std::size_t i = 0; i < A.dim; ++i)
                M.action.push_back(matrix(F, j["action"][i], where + ".action[" + std::to_string(i) + "]", M.dim, M.dim));
            if (!j.contains("pi")) invalid(where, "missing 'pi'");
            M.pi = SemilinearMap{matrix(F, j["pi"], where + ".pi", M.dim, M.dim), 1};
            o.bcom = M;
        } else {
            invalid(where, "unknown preset '" + preset + "'");
        }
    } else if (o.kind == "beck_lie") {
        o.over = get_str(j, "over", where);
        const RestrictedLie& L = need_rlie(ref(s, o.over, where), where);
        if (preset == "trivial") {
            Matrix fm(F, 1, 1);
            if (j.contains("f")) fm(0, 0) = scalar(F, j["f"], where + ".f");
            o.blie = BeckModuleLie{trivial_module(L, 1, SemilinearMap{fm, 1})};
        } else if (preset == "regular") {
            o.blie = regular_beck_lie(L);
        } else if (preset == "zero") {
            o.blie = zero_beck_lie(L);
        } else if (preset == "adjoint") {
            RestrictedModule M = adjoint_module(L);
            M.f = SemilinearMap{Matrix(F, M.dim, M.dim), 1};
            o.blie = BeckModuleLie{M};
        } else if (preset.empty()) {
            RestrictedModule M;
            M.dim = static_cast<std::size_t>(get_int(j, "dim", where));
            if (!j.contains("action") || !j["action"].is_array() || j["action"].size() != L.dim)
                invalid(where, "action needs one matrix per basis element of '" + o.over + "'");
            for (std::size_t i = 0; i < L.dim; ++i)
                M.action.push_back(matrix(F, j["action"][i], where + ".action[" + std::to_string(i) + "]", M.dim, M.dim));
            if (!j.contains("f")) invalid(where, "missing 'f'");
            M.f = SemilinearMap{matrix(F, j["f"], where + ".f", M.dim, M.dim), 1};
            o.blie = BeckModuleLie{M};
        } else {
            invalid(where, "unknown preset '" + preset + "'");
        }
    } else if (o.kind == "bimodule") {
        o.over = get_str(j, "over", where);
        o.ring = u_of(need_rlie(ref(s, o.over, where), where));
        if (preset == "trivial")
            o.bimod = trivial_bimodule(*o.ring);
        else if (preset == "regular")
            o.bimod = regular_bimodule(*o.ring);
        else
            invalid(where, "bimodule preset must be trivial or regular");
    } else if (o.kind == "map") {
        o.from = get_str(j, "from", where);
        o.to = get_str(j, "to", where);
        const Obj& a = ref(s, o.from, where);
        const Obj& b = ref(s, o.to, where);
        auto dim = [&](const Obj& x) -> std::size_t {
            if (x.comm) return x.comm->dim;
            if (x.lie) return x.lie->dim;
            invalid(where, "maps go between algebras");
        };
        if (!j.contains("matrix")) invalid(where, "missing 'matrix'");
        o.map = matrix(F, j["matrix"], where + ".matrix", dim(b), dim(a));
    }
    return o;
}

json report_json(const RelationReport& r) {
    json j;
    j["name"] = r.name;
    j["trials"] = r.trials;
    j["passed"] = r.passed;
    j["nontrivial"] = r.nontrivial;
    if (!r.witness.empty()) j["witness"] = r.witness;
    return j;
}

RelationReport single(const std::string& name, bool ok, const std::string& witness = "") {
    Checker c(name);
    c.check(ok, [&] { return witness; });
    return c.report();
}

json ring_tables(const FinRing& R) {
    json out = json::array();
    for (std::size_t i = 0; i < R.dim; ++i) {
        Matrix m(R.F(), R.dim, R.dim);
        for (std::size_t k = 0; k < R.dim; ++k) m.set_col(k, R.mul(R.basis(i), R.basis(k)));
        out.push_back(matrix_json(m));
    }
    return out;
}

json labels_json(const std::vector<std::string>& l) { return json(l); }

struct Ctx {
    const JobSpec& job;
    const RunOptions& opt;
    const Store& store;
    std::uint64_t seed;
    bool has_seed;

    int N(const json& t, int def = 2) const {
        if (opt.truncation_f) return *opt.truncation_f;
        return get_int(t, "N", "task", def);
    }
    int D(const json& t, int def) const {
        if (opt.truncation_deg) return *opt.truncation_deg;
        return get_int(t, "D", "task", def);
    }
    const Obj& obj(const json& t, const std::string& key) const { return ref(store, get_str(t, key, "task"), "task"); }
};

void add(TaskResult& r, std::vector<RelationReport> reps) {
    for (auto& x : reps) r.reports.push_back(std::move(x));
}

RelationReport check_map(const Obj& src, const Obj& dst, const Matrix& g) {
    Checker c("homomorphism");
    if (src.comm && dst.comm) {
        const auto& B = *src.comm;
        const auto& A = *dst.comm;
        for (std::size_t i = 0; i < B.dim; ++i)
            for (std::size_t k = 0; k < B.dim; ++k) {
                const Vec lhs = g.apply(B.mul(B.basis(i), B.basis(k)));
                const Vec rhs = A.mul(g.col(i), g.col(k));
                c.check(lhs == rhs, [&] { return "g(" + B.labels[i] + "*" + B.labels[k] + ") = " + A.describe(lhs); });
            }
        if (src.pd && dst.pd)
            for (std::size_t i = 0; i < B.dim; ++i) {
                const Vec lhs = g.apply(src.pd->pi[i]);
                const Vec rhs = pi_extend(*dst.pd, g.col(i));
                c.check(lhs == rhs, [&] { return "g(pi " + B.labels[i] + ") = " + A.describe(lhs); });
            }
    } else if (src.lie && dst.lie) {
        const auto& L = *src.lie;
        const auto& H = *dst.lie;
        for (std::size_t i = 0; i < L.dim; ++i)
            for (std::size_t k = 0; k < L.dim; ++k) {
                const Vec lhs = g.apply(L.br(L.basis(i), L.basis(k)));
                c.check(lhs == H.br(g.col(i), g.col(k)),
                        [&] { return "g[" + L.labels[i] + "," + L.labels[k] + "] = " + H.describe(lhs); });
            }
        if (src.rlie && dst.rlie)
            for (std::size_t i = 0; i < L.dim; ++i) {
                const Vec lhs = g.apply(src.rlie->pmap[i]);
                c.check(lhs == pmap_extend(*dst.rlie, g.col(i)),
                        [&] { return "g(" + L.labels[i] + "^[p]) = " + H.describe(lhs); });
            }
    } else {
        invalid("check", "map between algebras of different types");
    }
    return c.report();
}

void task_check(const Ctx& cx, const json& t, TaskResult& r) {
    const Obj& o = cx.obj(t, "object");
    const int trials = get_int(t, "trials", "task", 100);
    if (o.kind == "map") {
        r.reports.push_back(check_map(ref(cx.store, o.from, "task"), ref(cx.store, o.to, "task"), *o.map));
    } else if (o.pd) {
        add(r, check_pdcom(*o.pd, trials, cx.seed));
        if (o.free) add(r, check_pd_axioms(*o.free, trials, cx.seed));
        r.data["dim"] = o.pd->dim;
    } else if (o.comm) {
        add(r, check_ring(augmented_ring(*o.comm)));
        r.data["dim"] = o.comm->dim;
    } else if (o.rlie) {
        add(r, check_rlie(*o.rlie, trials, cx.seed));
        r.data["dim"] = o.rlie->dim;
    } else if (o.lie) {
        add(r, check_lie(*o.lie));
        r.data["dim"] = o.lie->dim;
    } else if (o.bcom) {
        add(r, check_beck_com(*ref(cx.store, o.over, "task").pd, *o.bcom));
        r.data["dim"] = o.bcom->dim;
    } else if (o.blie) {
        add(r, check_beck_lie(*ref(cx.store, o.over, "task").rlie, *o.blie, std::min(trials, 50), cx.seed));
        r.data["dim"] = o.blie->module.dim;
    } else if (o.bimod) {
        add(r, check_bimodule(*o.ring, *o.bimod));
        r.data["dim"] = o.bimod->dim;
    }
}

void task_derive(const Ctx& cx, const json& t, TaskResult& r) {
    const Obj& m = cx.obj(t, "module");
    DerivationSpace D;
    if (m.bcom) {
        const auto& A = *ref(cx.store, m.over, "task").pd;
        D = derivations_com(A, *m.bcom);
        Checker c("derivation equations");
        for (std::size_t i = 0; i < D.basis.size(); ++i) {
            const auto rep = check_derivation_com(A, *m.bcom, D.basis[i], 30, cx.seed);
            c.check(rep.ok(), [&] { return "basis " + std::to_string(i) + ": " + rep.witness; });
        }
        r.reports.push_back(c.report());
    } else if (m.blie) {
        const auto& L = *ref(cx.store, m.over, "task").rlie;
        D = derivations_rlie(L, *m.blie);
        Checker c("derivation equations");
        for (std::size_t i = 0; i < D.basis.size(); ++i) {
            const auto rep = check_derivation_rlie(L, *m.blie, D.basis[i], 30, cx.seed);
            c.check(rep.ok(), [&] { return "basis " + std::to_string(i) + ": " + rep.witness; });
        }
        r.reports.push_back(c.report());
    } else if (m.bimod) {
        D = derivations_assoc(*m.ring, *m.bimod);
        Checker c("derivation equations");
        for (std::size_t i = 0; i < D.basis.size(); ++i) {
            const auto rep =
                check_derivation_assoc(*m.ring, *m.bimod, extend_assoc_derivation(*m.ring, *m.bimod, D.basis[i]), 30,
                                       cx.seed);
            c.check(rep.ok(), [&] { return "basis " + std::to_string(i) + ": " + rep.witness; });
        }
        r.reports.push_back(c.report());
    } else {
        invalid("derive", "'module' must be a Beck module or a bimodule");
    }
    r.data["dim_fp"] = D.dim;
    if (t.value("export", false)) {
        json b = json::array();
        for (const auto& X : D.basis) b.push_back(matrix_json(X));
        r.data["basis"] = b;
    }
}

void task_envelope(const Ctx& cx, const json& t, TaskResult& r) {
    const Obj& o = cx.obj(t, "object");
    const std::string kind = get_str(t, "ring", "task");
    const bool exp = t.value("export", false);
    auto ring = [&](const FinRing& R) {
        add(r, check_ring(R, 27, 500, cx.seed));
        r.data["dim"] = R.dim;
        r.data["labels"] = labels_json(R.labels);
        if (exp) r.data["tables"] = ring_tables(R);
    };
    if (kind == "u") {
        ring(u_of(need_rlie(o, "task")));
    } else if (kind == "w") {
        ring(w_of(need_rlie(o, "task"), cx.N(t)));
    } else if (kind == "V") {
        ring(v_of(need_pd(o, "task"), cx.N(t)));
    } else if (kind == "aug") {
        if (!o.comm) invalid("task", "'object' must be a commutative algebra");
        ring(augmented_ring(*o.comm));
    } else if (kind == "U") {
        if (!o.lie) invalid("task", "'object' must be a Lie algebra");
        ring(U_of(*o.lie, cx.D(t, 4)));
    } else if (kind == "p") {
        if (!o.lie) invalid("task", "'object' must be a Lie algebra");
        const auto pe = p_envelope(*o.lie, cx.N(t));
        add(r, check_rlie(pe.hat, 100, cx.seed));
        r.reports.push_back(single("eta injective", rank(pe.eta) == o.lie->dim));
        r.data["dim"] = pe.hat.dim;
        r.data["labels"] = labels_json(pe.hat.labels);
        r.data["eta"] = matrix_json(pe.eta);
    } else if (kind == "pd") {
        if (!o.env) invalid("task", "'object' must be a pdcom envelope preset");
        add(r, check_pdcom(o.env->algebra, 100, cx.seed));
        r.data["source_dim"] = o.env->source.dim;
        r.data["dim"] = o.env->algebra.dim;
        r.data["labels"] = labels_json(o.env->algebra.labels);
        r.data["eta"] = matrix_json(o.env->eta);
    } else {
        invalid("task", "ring must be one of u, w, V, U, aug, p, pd");
    }
}

// Hom(Omega_N, M) against Der(X, M); fills the report
void representability(const Obj& x, const Obj& m, const std::vector<int>& Ns, TaskResult& r) {
    std::size_t der = 0;
    std::vector<std::size_t> homs;
    if (x.pd && m.bcom) {
        der = derivations_com(*x.pd, *m.bcom).dim;
        for (int N : Ns) {
            const auto P = omega_com(*x.pd, N);
            homs.push_back(hom_module(P, to_v_module(*x.pd, P.ring, *m.bcom)).dim);
        }
    } else if (x.rlie && m.blie) {
        der = derivations_rlie(*x.rlie, *m.blie).dim;
        for (int N : Ns) {
            const auto P = omega_rlie(*x.rlie, N);
            homs.push_back(hom_module(P, to_w_module(*x.rlie, P.ring, *m.blie)).dim);
        }
    } else {
        invalid("task", "representability needs a pdcom or rlie object with a Beck module over it");
    }
    r.data["der_dim_fp"] = der;
    json h = json::object();
    Checker c("dim Hom(Omega, M) = dim Der");
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        h["N=" + std::to_string(Ns[i])] = homs[i];
        c.check(homs[i] == der, [&] {
            return "N=" + std::to_string(Ns[i]) + ": " + std::to_string(homs[i]) + " vs " + std::to_string(der);
        });
    }
    r.data["hom_dim_fp"] = h;
    r.reports.push_back(c.report());
}

void task_omega(const Ctx& cx, const json& t, TaskResult& r) {
    const Obj& o = cx.obj(t, "object");
    PresentedModule P;
    const int N = cx.N(t);
    if (o.pd)
        P = omega_com(*o.pd, N);
    else if (o.rlie)
        P = omega_rlie(*o.rlie, N);
    else if (o.comm)
        P = omega_plain_com(*o.comm);
    else if (o.lie)
        P = omega_plain_lie(*o.lie, cx.D(t, 4));
    else
        invalid("task", "'object' must be an algebra");
    const auto Q = quotient(P);
    add(r, check_ring_module(P.ring, Q.module));
    r.data["ring"] = P.ring.name;
    r.data["ring_dim"] = P.ring.dim;
    r.data["generators"] = labels_json(P.generators);
    r.data["free_dim"] = P.free_dim();
    r.data["relations"] = P.relations.size();
    r.data["quotient_dim"] = Q.module.dim;
    if (t.value("export", false) && !P.relations.empty())
        r.data["relation_rows"] = matrix_json(Matrix::from_rows(P.ring.F(), P.relations, P.free_dim()));
    if (t.contains("module")) representability(o, cx.obj(t, "module"), {N}, r);
}

void assoc_vs_restricted(const RestrictedLie& L, const FinRing& u, const Bimodule& M, std::uint64_t seed,
                         TaskResult& r) {
    const auto Da = derivations_assoc(u, M);
    const auto lie_mod = commutator_module(L, u, M);
    const auto Dl = derivations_rlie(L, lie_mod);
    r.data["assoc_dim_fp"] = Da.dim;
    r.data["restricted_dim_fp"] = Dl.dim;
    r.reports.push_back(single("dimensions agree", Da.dim == Dl.dim,
                               std::to_string(Da.dim) + " vs " + std::to_string(Dl.dim)));
    Checker c("restriction is a restricted derivation");
    std::vector<Vec> rows;
    for (const auto& X : Da.basis) {
        const auto rep = check_derivation_rlie(L, lie_mod, X, 30, seed);
        c.check(rep.ok(), [&] { return rep.witness; });
        rows.push_back(X.data);
    }
    r.reports.push_back(c.report());
    // F_p-independence of the restricted generator values, on F_p-coordinates
    std::size_t rk = 0;
    if (!rows.empty()) {
        auto fp = Field::make(L.F().p());
        std::vector<Vec> coords;
        for (const auto& v : rows) {
            Vec c;
            for (Fe a : v)
                for (int x : a.coeffs()) c.push_back(fp->from_int(x));
            coords.push_back(c);
        }
        rk = rank(Matrix::from_rows(*fp, coords, coords[0].size()));
    }
    r.reports.push_back(single("restriction injective", rk == Da.dim));
}

void task_compare(const Ctx& cx, const json& t, TaskResult& r) {
    const std::string kind = get_str(t, "kind", "task");
    const Field& F = *cx.job.field;
    if (kind == "representability") {
        std::vector<int> Ns{1, 2};
        if (cx.opt.truncation_f) Ns = {*cx.opt.truncation_f};
        else if (t.contains("N")) Ns = t["N"].is_array() ? t["N"].get<std::vector<int>>() : std::vector<int>{t["N"].get<int>()};
        representability(cx.obj(t, "object"), cx.obj(t, "module"), Ns, r);
    } else if (kind == "assoc_vs_restricted") {
        const Obj& L = cx.obj(t, "object");
        const auto& R = need_rlie(L, "task");
        const FinRing u = u_of(R);
        const std::string which = get_str(t, "bimodule", "task", "regular");
        if (which != "trivial" && which != "regular") invalid("task", "bimodule must be trivial or regular");
        assoc_vs_restricted(R, u, which == "trivial" ? trivial_bimodule(u) : regular_bimodule(u), cx.seed, r);
    } else if (kind == "pd_counterexample") {
        if (F.p() != 2 || F.k() != 1) invalid("task", "the counterexample lives over F_2");
        const int D = get_int(t, "degree", "task", 4);
        FreePdCom G(cx.job.field, 1, D);
        const auto& A = G.algebra();
        const auto i2 = G.index({2}), i3 = G.index({3});
        if (!i2 || !i3) invalid("task", "degree must be at least 3");
        const Vec prod = A.mul(G.generator(0), A.basis(*i2));
        const std::string w = "x*x^(2) = " + A.describe(prod);
        r.data["witness"] = w;
        r.reports.push_back(single("x*x^(2) = x^(3) != 0", prod == A.basis(*i3) && !is_zero(prod), w));
        const auto env = pd_envelope(cx.job.field, 1, {{{F.one(), {2}}}}, D);
        PdComAlgebra zero;
        static_cast<CommAlgebra&>(zero) =
            make_comm_algebra(cx.job.field, {}, [](std::size_t, std::size_t) { return Vec{}; });
        std::string outcome = "no error";
        try {
            kernel_module_com(zero, env.algebra, Matrix(F, 0, env.algebra.dim), Matrix(F, env.algebra.dim, 0));
        } catch (const Error& e) {
            outcome = e.what();
            if (e.kind() != ErrorKind::NotSquareZero) throw;
        }
        r.data["kernel_module"] = outcome;
        r.reports.push_back(single("kernel_module reports NotSquareZero", outcome.rfind("NotSquareZero", 0) == 0,
                                   outcome));
    } else if (kind == "comparison" || kind == "naturality") {
        const int N = cx.N(t);
        const int D = cx.D(t, 4);
        ComparisonMap c;
        if (t.contains("object")) {
            const Obj& o = cx.obj(t, "object");
            if (kind != "comparison") invalid("task", "naturality needs a 'map'");
            if (o.env)
                c = comparison_omega_com(o.env->source, o.env->algebra, o.env->eta, N);
            else if (o.penv)
                c = comparison_omega_lie(*o.penv_source, o.penv->hat, o.penv->eta, D, N);
            else
                invalid("task", "'object' must be an envelope preset");
            r.reports.push_back(check_well_defined(c));
        } else {
            const Obj& m = cx.obj(t, "map");
            if (m.kind != "map") invalid("task", "'map' must be a map");
            const Obj& B = ref(cx.store, m.from, "task");
            const Obj& A = ref(cx.store, m.to, "task");
            if (kind == "comparison") {
                if (B.comm && A.pd)
                    c = comparison_omega_com(*B.comm, *A.pd, *m.map, N);
                else if (B.lie && A.rlie)
                    c = comparison_omega_lie(*B.lie, *A.rlie, *m.map, D, N);
                else
                    invalid("task", "comparison needs a map into a pdcom or rlie algebra");
                r.reports.push_back(check_well_defined(c));
            } else if (B.pd && A.pd) {
                r.reports.push_back(check_well_defined(base_change_com(*B.pd, *A.pd, *m.map, N)));
                r.reports.push_back(check_naturality_com(*B.pd, *A.pd, *m.map, N));
            } else if (B.rlie && A.rlie) {
                r.reports.push_back(check_well_defined(base_change_rlie(*B.rlie, *A.rlie, *m.map, N)));
                r.reports.push_back(check_naturality_lie(*B.rlie, *A.rlie, *m.map, D, N));
            } else {
                invalid("task", "naturality needs a pdcom or rlie morphism");
            }
        }
        if (!c.free_map.data.empty() || c.free_map.rows + c.free_map.cols > 0) {
            r.data["source_free_dim"] = c.source.free_dim();
            r.data["target_free_dim"] = c.target.free_dim();
        }
    } else if (kind == "abelianization") {
        const Obj& m = cx.obj(t, "map");
        const Obj& mod = cx.obj(t, "module");
        const Obj& B = ref(cx.store, m.from, "task");
        const Obj& A = ref(cx.store, m.to, "task");
        const int N = cx.N(t);
        std::size_t hom = 0, der = 0;
        Checker c("adjunct is a derivation");
        if (B.pd && A.pd && mod.bcom) {
            const auto ab = abelianization_com(*B.pd, *A.pd, *m.map, N);
            const auto VA = v_of(*A.pd, N);
            const auto H = hom_ring_modules(VA, to_v_module(*A.pd, VA, ab.module), to_v_module(*A.pd, VA, *mod.bcom));
            const auto pulled = pullback_com(*B.pd, *m.map, *mod.bcom);
            hom = H.dim;
            der = derivations_com(*B.pd, pulled).dim;
            for (const auto& T : H.basis) {
                const auto rep = check_derivation_com(*B.pd, pulled, T * ab.derivation, 30, cx.seed);
                c.check(rep.ok(), [&] { return rep.witness; });
            }
            r.data["module_dim"] = ab.module.dim;
        } else if (B.rlie && A.rlie && mod.blie) {
            const auto ab = abelianization_lie(*B.rlie, *A.rlie, *m.map, N);
            const auto w = w_of(*A.rlie, N);
            const auto H = hom_ring_modules(w, to_w_module(*A.rlie, w, ab.module), to_w_module(*A.rlie, w, *mod.blie));
            const auto pulled = pullback_lie(*B.rlie, *m.map, *mod.blie);
            hom = H.dim;
            der = derivations_rlie(*B.rlie, pulled).dim;
            for (const auto& T : H.basis) {
                const auto rep = check_derivation_rlie(*B.rlie, pulled, T * ab.derivation, 30, cx.seed);
                c.check(rep.ok(), [&] { return rep.witness; });
            }
            r.data["module_dim"] = ab.module.module.dim;
        } else {
            invalid("task", "abelianization needs a pdcom or rlie morphism and a Beck module over its target");
        }
        r.data["hom_dim_fp"] = hom;
        r.data["der_dim_fp"] = der;
        r.reports.push_back(single("dim Hom(g_! Omega, M) = dim Der(B, g*M)", hom == der,
                                   std::to_string(hom) + " vs " + std::to_string(der)));
        r.reports.push_back(c.report());
    } else if (kind == "coefficients") {
        const Obj& o = cx.obj(t, "object");
        const Obj& mod = cx.obj(t, "module");
        Checker c("fiber product action = restriction");
        if (o.env && mod.bcom) {
            const auto& Ahat = o.env->algebra;
            const auto E = semidirect_com(Ahat, *mod.bcom);
            const auto fp = fiber_product_action_com(o.env->source, o.env->eta, E);
            const auto V = v_of(Ahat, cx.N(t));
            const auto aug = augmented_ring(o.env->source);
            Matrix phi(F, V.dim, aug.dim);
            phi(V.unit, 0) = F.one();
            for (std::size_t i = 0; i < o.env->source.dim; ++i)
                for (std::size_t k = 0; k < Ahat.dim; ++k) phi(1 + k, 1 + i) = o.env->eta(k, i);
            const auto R = restrict_module(aug, phi, V, to_v_module(Ahat, V, *mod.bcom));
            for (std::size_t i = 0; i < fp.size(); ++i)
                c.check(fp[i] == R.action[1 + i], [&] { return "basis element " + o.env->source.labels[i]; },
                        !fp[i].is_zero());
        } else if (o.penv && mod.blie) {
            const auto& Lhat = o.penv->hat;
            const auto E = semidirect_lie(Lhat, *mod.blie);
            const auto fp = fiber_product_action_lie(*o.penv_source, o.penv->eta, E);
            const auto w = w_of(Lhat, cx.N(t));
            const auto R = to_w_module(Lhat, w, *mod.blie);
            for (std::size_t i = 0; i < fp.size(); ++i) {
                Matrix direct(F, mod.blie->module.dim, mod.blie->module.dim);
                for (std::size_t k = 0; k < Lhat.dim; ++k)
                    if (!o.penv->eta(k, i).is_zero())
                        direct = direct + R.action[w.gens[k]].scaled(o.penv->eta(k, i));
                c.check(fp[i] == direct, [&] { return "basis element " + o.penv_source->labels[i]; },
                        !fp[i].is_zero());
            }
        } else {
            invalid("task", "coefficients needs an envelope preset and a Beck module over it");
        }
        r.reports.push_back(c.report());
    } else if (kind == "penvelope_split") {
        const Obj& o = cx.obj(t, "object");
        if (!o.lie) invalid("task", "'object' must be a Lie algebra");
        if (!t.contains("rho") || !t["rho"].is_array() || t["rho"].size() != o.lie->dim)
            invalid("task", "rho needs one matrix per basis element");
        std::vector<Matrix> rho;
        for (std::size_t i = 0; i < o.lie->dim; ++i)
            rho.push_back(matrix(F, t["rho"][i], "task.rho[" + std::to_string(i) + "]"));
        add(r, check_penvelope_splits(*o.lie, rho, cx.N(t)));
    } else if (kind == "roundtrip") {
        const Obj& m = cx.obj(t, "module");
        if (m.bcom) {
            const auto& A = *ref(cx.store, m.over, "task").pd;
            const auto E = semidirect_com(A, *m.bcom);
            add(r, check_pdcom(E.algebra, 100, cx.seed));
            const auto K = kernel_module_com(A, E.algebra, E.pr, E.z);
            r.reports.push_back(single("kernel_module o semidirect = id",
                                       K.dim == m.bcom->dim && K.action == m.bcom->action &&
                                           K.pi.matrix == m.bcom->pi.matrix));
        } else if (m.blie) {
            const auto& L = *ref(cx.store, m.over, "task").rlie;
            const auto E = semidirect_lie(L, *m.blie);
            add(r, check_rlie(E.algebra, 100, cx.seed));
            const auto K = kernel_module_lie(L, E.algebra, E.pr, E.z);
            r.reports.push_back(single("kernel_module o semidirect = id",
                                       K.module.dim == m.blie->module.dim &&
                                           K.module.action == m.blie->module.action &&
                                           K.module.f->matrix == m.blie->module.f->matrix));
        } else {
            invalid("task", "roundtrip needs a Beck module");
        }
    } else {
        invalid("task", "unknown compare kind '" + kind + "'");
    }
}

OperadPtr operad_of(const Ctx& cx, const json& t, int arity) {
    const std::string op = get_str(t, "operad", "task", "com");
    if (op == "com") return Operad::com(cx.job.field, arity);
    if (op == "lie") return Operad::lie(cx.job.field, arity);
    invalid("task", "operad must be com or lie");
}

void task_relations(const Ctx& cx, const json& t, TaskResult& r) {
    const std::string suite = get_str(t, "suite", "task", "beta");
    const int d = get_int(t, "generators", "task", 1);
    const int D = cx.opt.truncation_deg ? *cx.opt.truncation_deg : get_int(t, "degree", "task", 4);
    const int trials = get_int(t, "trials", "task", 100);
    if (suite == "beta") {
        FreeGamma g(operad_of(cx, t, D), d, D);
        add(r, check_beta_relations(g, trials, cx.seed));
    } else if (suite == "norm") {
        FreeGamma g(operad_of(cx, t, D), d, D);
        json ranks = json::object();
        for (int n = 1; n <= D; ++n) ranks[std::to_string(n)] = norm_map(g, n).rank;
        r.data["norm_rank"] = ranks;
    } else if (suite == "pd_axioms") {
        add(r, check_pd_axioms(FreePdCom(cx.job.field, d, D), trials, cx.seed));
    } else {
        invalid("task", "suite must be beta, norm or pd_axioms");
    }
}

void task_beta(const Ctx& cx, const json& t, TaskResult& r) {
    const int d = get_int(t, "generators", "task", 1);
    const int D = cx.opt.truncation_deg ? *cx.opt.truncation_deg : get_int(t, "degree", "task", 4);
    if (!t.contains("r") || !t["r"].is_array()) invalid("task", "missing composition 'r'");
    const Composition comp = t["r"].get<Composition>();
    const int n = total(comp);
    FreeGamma g(operad_of(cx, t, std::max(n, D)), d, D);
    const auto& op = g.operad();
    const Vec x = vec(op.field(), t.value("x", json::array()), op.dim(n), "task.x");
    if (!t.contains("args") || !t["args"].is_array() || t["args"].size() != comp.size())
        invalid("task", "one generator index per part");
    std::vector<GammaElement> args;
    for (const auto& a : t["args"]) {
        const int k = a.get<int>();
        if (k < 0 || k >= d) invalid("task", "generator index out of range");
        args.push_back(g.generator(k));
    }
    BetaOptions bo;
    bo.strict_degree = cx.opt.strict_degree;
    const auto out = beta_eval(g, x, comp, args, bo);
    r.data["value"] = g.describe(out);
    r.reports.push_back(single("invariant output", g.is_invariant(out)));
}

TaskResult run_task(const Ctx& cx, const json& t) {
    TaskResult r;
    r.task = t["task"].get<std::string>();
    r.label = r.task;
    for (const char* k : {"object", "module", "map", "kind", "suite", "ring"})
        if (t.contains(k) && t[k].is_string()) r.label += " " + t[k].get<std::string>();
    try {
        if (r.task == "check")
            task_check(cx, t, r);
        else if (r.task == "derive")
            task_derive(cx, t, r);
        else if (r.task == "envelope")
            task_envelope(cx, t, r);
        else if (r.task == "omega")
            task_omega(cx, t, r);
        else if (r.task == "compare")
            task_compare(cx, t, r);
        else if (r.task == "relations")
            task_relations(cx, t, r);
        else if (r.task == "beta")
            task_beta(cx, t, r);
        r.status = all_ok(r.reports) ? Status::pass : Status::fail;
    } catch (const Error& e) {
        r.status = Status::error;
        r.error = e.kind() == ErrorKind::ValidationError ? e.what() : std::string("TaskError: ") + e.what();
    } catch (const std::exception& e) {
        r.status = Status::error;
        r.error = std::string("TaskError: ") + e.what();
    }
    return r;
}

bool randomized(const json& t) {
    const std::string task = t["task"].get<std::string>();
    return task == "check" || task == "relations" || (task == "compare" && t.value("kind", "") == "roundtrip");
}

}  // namespace

const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::error: return "error";
    }
    return "error";
}

json matrix_json(const Matrix& m) {
    json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    json data = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) data.push_back(vec_json(m.row(i)));
    j["data"] = data;
    return j;
}

JobSpec parse_job(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [l, c] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string msg = e.what();
        const auto pos = msg.find("column ");
        if (pos != std::string::npos && msg.find(": ", pos) != std::string::npos)
            msg = msg.substr(msg.find(": ", pos) + 2);
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg);
    }
    const Locator loc{text};
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "line 1, column 1: document must be an object");
    loc.keys(doc, "document", {"field", "objects", "tasks", "seed", "output"});

    JobSpec job;
    if (!doc.contains("field") || !doc["field"].is_object()) invalid("document", "missing 'field'");
    const json& fj = doc["field"];
    loc.keys(fj, "field", {"p", "k", "modulus"});
    const int p = get_int(fj, "p", "field");
    const int k = get_int(fj, "k", "field", 1);
    if (!is_prime(p)) invalid("field", std::to_string(p) + " is not prime");
    if (k < 1) invalid("field", "k must be positive");
    std::vector<int> modulus;
    if (fj.contains("modulus")) modulus = fj["modulus"].get<std::vector<int>>();
    try {
        job.field = Field::make(p, k, modulus);
    } catch (const Error& e) {
        invalid("field", e.what());
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) invalid("seed", "must be a non-negative integer");
        job.seed = doc["seed"].get<std::uint64_t>();
    }

    job.objects = doc.value("objects", json::array());
    if (!job.objects.is_array()) invalid("objects", "must be a list");
    std::set<std::string> names;
    for (std::size_t i = 0; i < job.objects.size(); ++i) {
        const json& o = job.objects[i];
        const std::string where = "objects[" + std::to_string(i) + "]";
        if (!o.is_object()) invalid(where, "must be an object");
        const std::string name = get_str(o, "name", where);
        const std::string kind = get_str(o, "kind", where);
        auto ks = object_keys.find(kind);
        if (ks == object_keys.end()) invalid(where, "unknown kind '" + kind + "'");
        loc.keys(o, where, ks->second);
        for (const auto& rk : reference_keys)
            if (o.contains(rk) && rk != "object" && rk != "module" && rk != "map") {
                const std::string target = get_str(o, rk, where);
                if (!names.count(target)) invalid(where, "'" + target + "' is not defined before this object");
            }
        if (!names.insert(name).second) invalid(where, "duplicate object name '" + name + "'");
    }

    job.tasks = doc.value("tasks", json::array());
    if (!job.tasks.is_array()) invalid("tasks", "must be a list");
    for (std::size_t i = 0; i < job.tasks.size(); ++i) {
        const json& t = job.tasks[i];
        const std::string where = "tasks[" + std::to_string(i) + "]";
        if (!t.is_object()) invalid(where, "must be an object");
        const std::string task = get_str(t, "task", where);
        auto ks = task_keys.find(task);
        if (ks == task_keys.end()) invalid(where, "unknown task '" + task + "'");
        loc.keys(t, where, ks->second);
        for (const char* rk : {"object", "module", "map"})
            if (t.contains(rk)) {
                const std::string target = get_str(t, rk, where);
                if (!names.count(target)) invalid(where, "unknown object '" + target + "'");
            }
    }

    if (doc.contains("output")) {
        const json& oj = doc["output"];
        if (!oj.is_object()) invalid("output", "must be an object");
        loc.keys(oj, "output", {"path", "format"});
        job.output_path = get_str(oj, "path", "output", "");
        const std::string fmt = get_str(oj, "format", "output", "structured");
        if (fmt == "text")
            job.format = Format::text;
        else if (fmt != "structured")
            invalid("output", "format must be text or structured");
    }
    return job;
}

Status JobReport::status() const {
    Status s = Status::pass;
    for (const auto& t : tasks) {
        if (t.status == Status::error) return Status::error;
        if (t.status == Status::fail) s = Status::fail;
    }
    return s;
}

JobReport run_job(const JobSpec& job, const RunOptions& opt) {
    const bool has_seed = opt.seed || job.seed;
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < job.tasks.size(); ++i) {
        const json& t = job.tasks[i];
        if (opt.only && t["task"].get<std::string>() != *opt.only) continue;
        if (randomized(t) && !has_seed)
            invalid("tasks[" + std::to_string(i) + "]", "randomized task needs an explicit seed");
        selected.push_back(i);
    }

    Store store;
    for (std::size_t i = 0; i < job.objects.size(); ++i) {
        Obj o;
        try {
            o = build(job.field, job.objects[i], store, i);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ValidationError) throw;
            throw Error(ErrorKind::ValidationError, "objects[" + std::to_string(i) + "]: " + e.what());
        } catch (const std::exception& e) {
            throw Error(ErrorKind::ValidationError, "objects[" + std::to_string(i) + "]: " + e.what());
        }
        store.emplace(o.name, std::move(o));
    }

    JobReport rep;
    rep.field = job.field->describe();
    rep.seed = opt.seed ? *opt.seed : job.seed.value_or(0);
    rep.tasks.resize(selected.size());
    const Ctx cx{job, opt, store, rep.seed, has_seed};
#pragma omp parallel for schedule(dynamic)
    for (std::size_t s = 0; s < selected.size(); ++s) rep.tasks[s] = run_task(cx, job.tasks[selected[s]]);
    return rep;
}

std::string render(const JobReport& r, Format f) {
    if (f == Format::structured) {
        json j;
        j["field"] = r.field;
        j["seed"] = r.seed;
        j["status"] = to_string(r.status());
        json tasks = json::array();
        for (std::size_t i = 0; i < r.tasks.size(); ++i) {
            const auto& t = r.tasks[i];
            json tj;
            tj["task"] = t.task;
            tj["label"] = t.label;
            tj["status"] = to_string(t.status);
            if (!t.error.empty()) tj["error"] = t.error;
            json reps = json::array();
            for (const auto& x : t.reports) reps.push_back(report_json(x));
            tj["reports"] = reps;
            tj["data"] = t.data;
            tasks.push_back(tj);
        }
        j["tasks"] = tasks;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "field " << r.field << ", seed " << r.seed << "\n";
    for (std::size_t i = 0; i < r.tasks.size(); ++i) {
        const auto& t = r.tasks[i];
        std::string st = to_string(t.status);
        std::transform(st.begin(), st.end(), st.begin(), ::toupper);
        os << st << "  #" << i << " " << t.label << "\n";
        if (!t.error.empty()) os << "    " << t.error << "\n";
        for (const auto& x : t.reports) {
            os << "    " << x.name << ": " << x.passed << "/" << x.trials;
            if (!x.witness.empty() && !x.ok()) os << "  witness: " << x.witness;
            os << "\n";
        }
        for (const auto& [k, v] : t.data.items())
            if (v.is_primitive() || (v.is_object() && v.size() <= 4 && v.dump().size() < 80))
                os << "    " << k << " = " << v.dump() << "\n";
    }
    os << "status: " << to_string(r.status()) << "\n";
    return os.str();
}

int exit_code(const JobReport& r) {
    switch (r.status()) {
        case Status::pass: return 0;
        case Status::fail: return 1;
        case Status::error: return 2;
    }
    return 2;
}

}  // namespace dpalg::cli
