#include "njcalc/forest.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <sstream>

#include "njcalc/parallel.hpp"

namespace njcalc {

namespace {

bool g_sign_defect = false;

Rational sign_of(long exponent) { return pow_sign(exponent); }

/// Ordered compositions of n into exactly p positive parts.
void compositions_rec(int n, int p, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (p == 1) {
        if (n >= 1) {
            cur.push_back(n);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first <= n - (p - 1); ++first) {
        cur.push_back(first);
        compositions_rec(n - first, p - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> compositions(int n, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (p >= 1 && n >= p) compositions_rec(n, p, cur, out);
    return out;
}

/// All strictly increasing k-subsets of {1..p}.
void subsets_rec(int p, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v <= p; ++v) {
        cur.push_back(v);
        subsets_rec(p, k, v + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> increasing_subsets(int p, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets_rec(p, k, 1, cur, out);
    return out;
}

}  // namespace

void set_sign_defect(bool on) { g_sign_defect = on; }
bool sign_defect() { return g_sign_defect; }

int Generator::degree() const {
    switch (fam) {
        case Family::M: return arity - 2;
        case Family::P: return arity - 1;
        case Family::X: return -1;
        case Family::Y: return 0;
    }
    return 0;
}

std::string Generator::name() const {
    const char* f = fam == Family::M ? "m" : fam == Family::P ? "P" : fam == Family::X ? "x" : "y";
    return f + std::to_string(arity);
}

TreeMonomial TreeMonomial::from_tokens(std::vector<Token> toks) {
    long open = 1;
    for (const auto& t : toks) {
        if (open <= 0) throw std::invalid_argument("from_tokens: malformed prefix encoding");
        open -= 1;
        if (!t.leaf) {
            if (t.gen.arity < 1) throw std::invalid_argument("from_tokens: vertex arity < 1");
            open += t.gen.arity;
        }
    }
    if (open != 0) throw std::invalid_argument("from_tokens: malformed prefix encoding");
    TreeMonomial out;
    out.toks_ = std::move(toks);
    return out;
}

TreeMonomial TreeMonomial::corolla(Generator g) {
    if (g.arity < 1 || ((g.fam == Family::M || g.fam == Family::X) && g.arity < 2))
        throw std::invalid_argument("corolla: arity out of range for " + g.name());
    TreeMonomial t;
    t.toks_.push_back({false, g});
    for (int i = 0; i < g.arity; ++i) t.toks_.push_back({true, {}});
    return t;
}

int TreeMonomial::leaf_count() const {
    int n = 0;
    for (const auto& t : toks_) n += t.leaf ? 1 : 0;
    return n;
}

int TreeMonomial::vertex_count() const { return static_cast<int>(toks_.size()) - leaf_count(); }

int TreeMonomial::degree() const {
    int d = 0;
    for (const auto& t : toks_)
        if (!t.leaf) d += t.gen.degree();
    return d;
}

Presentation TreeMonomial::presentation() const {
    bool mp = false, xy = false;
    for (const auto& t : toks_) {
        if (t.leaf) continue;
        (t.gen.fam == Family::M || t.gen.fam == Family::P) ? mp = true : xy = true;
    }
    if (mp && xy) throw MixedPresentation("tree mixes m/P and x/y generators");
    return xy ? Presentation::XY : Presentation::MP;
}

std::size_t TreeMonomial::leaf_pos(int i) const {
    if (i < 1) throw LeafOutOfRange("leaf index must be >= 1");
    int seen = 0;
    for (std::size_t p = 0; p < toks_.size(); ++p) {
        if (toks_[p].leaf && ++seen == i) return p;
    }
    throw LeafOutOfRange("leaf index " + std::to_string(i) + " exceeds " + std::to_string(seen) + " leaves");
}

TreeMonomial TreeMonomial::grafted(int i, const TreeMonomial& S) const {
    std::size_t p = leaf_pos(i);
    TreeMonomial out;
    out.toks_.reserve(toks_.size() + S.toks_.size() - 1);
    out.toks_.insert(out.toks_.end(), toks_.begin(), toks_.begin() + p);
    out.toks_.insert(out.toks_.end(), S.toks_.begin(), S.toks_.end());
    out.toks_.insert(out.toks_.end(), toks_.begin() + p + 1, toks_.end());
    return out;
}

int TreeMonomial::degree_after_leaf(int i) const {
    std::size_t p = leaf_pos(i);
    int d = 0;
    for (std::size_t q = p + 1; q < toks_.size(); ++q)
        if (!toks_[q].leaf) d += toks_[q].gen.degree();
    return d;
}

std::tuple<TreeMonomial, Generator, int> TreeMonomial::strip_last_vertex() const {
    std::size_t p = toks_.size();
    for (std::size_t q = toks_.size(); q-- > 0;) {
        if (!toks_[q].leaf) {
            p = q;
            break;
        }
    }
    if (p == toks_.size() || p == 0) throw std::logic_error("strip_last_vertex: needs >= 2 vertices");
    Generator g = toks_[p].gen;
    // the planar-last vertex is followed only by leaves, so its children are
    // exactly the next arity tokens
    TreeMonomial out;
    out.toks_.insert(out.toks_.end(), toks_.begin(), toks_.begin() + p);
    out.toks_.push_back({true, {}});
    out.toks_.insert(out.toks_.end(), toks_.begin() + p + 1 + g.arity, toks_.end());
    int leaf_idx = 1;
    for (std::size_t q = 0; q < p; ++q)
        if (toks_[q].leaf) ++leaf_idx;
    return {out, g, leaf_idx};
}

namespace {

struct Walker {
    const std::vector<TreeMonomial::Token>& toks;
    std::size_t pos = 0;

    void paths(std::vector<Generator>& prefix, std::vector<std::vector<Generator>>& out) {
        const auto& t = toks[pos++];
        if (t.leaf) {
            out.push_back(prefix);
            return;
        }
        prefix.push_back(t.gen);
        for (int c = 0; c < t.gen.arity; ++c) paths(prefix, out);
        prefix.pop_back();
    }

    void print(std::ostream& os, int& next_leaf) {
        const auto& t = toks[pos++];
        if (t.leaf) {
            os << next_leaf++;
            return;
        }
        os << t.gen.name() << "(";
        for (int c = 0; c < t.gen.arity; ++c) {
            if (c) os << ",";
            print(os, next_leaf);
        }
        os << ")";
    }
};

}  // namespace

std::vector<std::vector<Generator>> TreeMonomial::path_encoding() const {
    std::vector<std::vector<Generator>> out;
    std::vector<Generator> prefix;
    Walker w{toks_};
    w.paths(prefix, out);
    return out;
}

std::string TreeMonomial::str() const {
    std::ostringstream os;
    int leaf = 1;
    Walker w{toks_};
    w.print(os, leaf);
    return os.str();
}

OperadElement OperadElement::single(const TreeMonomial& t, Rational c) {
    OperadElement e;
    e.add_term(t, c);
    return e;
}

void OperadElement::add_term(const TreeMonomial& t, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        terms_.emplace(t, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void OperadElement::add(const OperadElement& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, c);
}

OperadElement OperadElement::scaled(const Rational& c) const {
    OperadElement out;
    if (c.is_zero()) return out;
    for (const auto& [t, v] : terms_) out.terms_.emplace(t, v * c);
    return out;
}

std::string OperadElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        if (!first) os << " + ";
        os << c.str() << " * " << t.str();
        first = false;
    }
    return os.str();
}

OperadElement compose_at(const TreeMonomial& T, int i, const TreeMonomial& S) {
    long exponent = static_cast<long>(S.degree()) * T.degree_after_leaf(i);
    return OperadElement::single(T.grafted(i, S), sign_of(exponent));
}

OperadElement compose_at(const OperadElement& T, int i, const OperadElement& S) {
    OperadElement out;
    for (const auto& [t, ct] : T.terms())
        for (const auto& [s, cs] : S.terms()) {
            long exponent = static_cast<long>(s.degree()) * t.degree_after_leaf(i);
            out.add_term(t.grafted(i, s), ct * cs * sign_of(exponent));
        }
    return out;
}

OperadElement tree_brace(const TreeMonomial& f, const std::vector<TreeMonomial>& args) {
    OperadElement out;
    int n = f.leaf_count();
    int k = static_cast<int>(args.size());
    if (k > n) return out;  // no admissible slot choice
    for (const auto& slots : increasing_subsets(n, k)) {
        OperadElement acc = OperadElement::single(f);
        int shift = 0;
        bool dead = false;
        for (int j = 0; j < k && !dead; ++j) {
            acc = compose_at(acc, slots[j] + shift, OperadElement::single(args[j]));
            shift += args[j].leaf_count() - 1;
            dead = acc.is_zero();
        }
        out.add(acc);
    }
    return out;
}

OperadElement tree_brace(const OperadElement& f, const std::vector<OperadElement>& args) {
    OperadElement out;
    std::vector<TreeMonomial> choice(args.size());
    std::vector<Rational> coeffs(args.size());
    // multilinear expansion over basis terms of every argument
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t j, const Rational& c) {
        if (j == args.size()) {
            for (const auto& [t, cf] : f.terms()) out.add(tree_brace(t, choice).scaled(cf * c));
            return;
        }
        for (const auto& [t, cv] : args[j].terms()) {
            choice[j] = t;
            rec(j + 1, c * cv);
        }
    };
    rec(0, Rational(1));
    return out;
}

OperadElement cobar_d_m(int n) {
    if (n < 2) throw std::invalid_argument("cobar_d_m: n >= 2 required");
    OperadElement out;
    for (int j = 2; j <= n - 1; ++j)
        for (int i = 1; i <= n - j + 1; ++i) {
            long e = static_cast<long>(i) + static_cast<long>(j) * (n - i);
            Rational s = sign_of(e);
            if (g_sign_defect && n == 3 && i == 1) s = -s;
            out.add(compose_at(TreeMonomial::corolla({Family::M, n - j + 1}), i,
                               TreeMonomial::corolla({Family::M, j}))
                        .scaled(s));
        }
    return out;
}

OperadElement cobar_d_P(int n) {
    if (n < 1) throw std::invalid_argument("cobar_d_P: n >= 1 required");
    OperadElement out;
    for (int p = 2; p <= n; ++p) {
        for (const auto& r : compositions(n, p)) {
            for (int t = 0; t <= p; ++t) {
                // insertion tuples i_q in 1..r_q for q = 1..t
                std::vector<int> ins(t, 1);
                bool ins_done = (t == 0);
                std::vector<std::vector<int>> ins_choices;
                if (t == 0) {
                    ins_choices.push_back({});
                } else {
                    while (true) {
                        ins_choices.push_back(ins);
                        int q = t - 1;
                        while (q >= 0 && ins[q] == r[q]) {
                            ins[q] = 1;
                            --q;
                        }
                        if (q < 0) break;
                        ++ins[q];
                    }
                }
                (void)ins_done;
                for (const auto& iq : ins_choices) {
                    for (const auto& ks : increasing_subsets(p, p - t)) {
                        // sign alpha'
                        long alpha = 1;
                        long suffix = 0;  // sum_{s>q} r_s, computed per q below
                        for (int q = 1; q <= t; ++q) {
                            suffix = 0;
                            for (int s = q + 1; s <= p; ++s) suffix += r[s - 1];
                            alpha += iq[q - 1] + suffix * (r[q - 1] - iq[q - 1]) -
                                     static_cast<long>(q) * (r[q - 1] - iq[q - 1]);
                        }
                        for (int idx = t + 1; idx <= p; ++idx) {
                            long k_val = ks[idx - 1 - t];  // k_{idx-1}
                            alpha += (k_val - p) * (r[idx - 1] - 1);
                        }

                        // inner block: m_p with P_{r_{t+1}}..P_{r_p} grafted at
                        // slots k_t < ... < k_{p-1}, composed in ascending order
                        OperadElement block = OperadElement::single(TreeMonomial::corolla({Family::M, p}));
                        int shift = 0;
                        for (int s = 0; s < p - t; ++s) {
                            block = compose_at(block, ks[s] + shift,
                                               OperadElement::single(
                                                   TreeMonomial::corolla({Family::P, r[t + s]})));
                            shift += r[t + s] - 1;
                        }
                        // wrap with P_{r_t} o_{i_t} ( ... ), outermost P_{r_1}
                        for (int q = t; q >= 1; --q) {
                            block = compose_at(
                                OperadElement::single(TreeMonomial::corolla({Family::P, r[q - 1]})),
                                iq[q - 1], block);
                        }
                        out.add(block.scaled(sign_of(alpha)));
                    }
                }
            }
        }
    }
    return out;
}

OperadElement cobar_d_xy(Generator g) {
    OperadElement out;
    if (g.fam == Family::X) {
        int n = g.arity;
        for (int j = 2; j <= n - 1; ++j) {
            out.add(tree_brace(TreeMonomial::corolla({Family::X, n - j + 1}),
                               {TreeMonomial::corolla({Family::X, j})})
                        .scaled(Rational(-1)));
        }
        return out;
    }
    if (g.fam != Family::Y) throw WrongFamily("cobar_d_xy: expected x or y generator");
    int n = g.arity;
    for (int p = 2; p <= n; ++p) {
        for (const auto& r : compositions(n, p)) {
            for (int t = 0; t <= p; ++t) {
                std::vector<OperadElement> inner_args;
                for (int s = t; s < p; ++s)
                    inner_args.push_back(OperadElement::single(TreeMonomial::corolla({Family::Y, r[s]})));
                OperadElement block =
                    tree_brace(OperadElement::single(TreeMonomial::corolla({Family::X, p})), inner_args);
                for (int q = t; q >= 1; --q) {
                    block = tree_brace(OperadElement::single(TreeMonomial::corolla({Family::Y, r[q - 1]})),
                                       {block});
                }
                out.add(block.scaled(sign_of(t + 1)));  // overall minus times (-1)^t
            }
        }
    }
    return out;
}

OperadElement cobar_d(Generator g) {
    switch (g.fam) {
        case Family::M: return cobar_d_m(g.arity);
        case Family::P: return cobar_d_P(g.arity);
        default: return cobar_d_xy(g);
    }
}

namespace {

OperadElement differential_tree(const TreeMonomial& t, std::map<TreeMonomial, OperadElement>& cache) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    OperadElement res;
    if (t.vertex_count() == 1) {
        res = cobar_d(t.tokens()[0].gen);
    } else {
        auto [head, g, leaf] = t.strip_last_vertex();
        // d(head o g) = d(head) o g + (-1)^{|head|} head o d(g)
        res = compose_at(differential_tree(head, cache), leaf,
                         OperadElement::single(TreeMonomial::corolla(g)));
        OperadElement second = compose_at(OperadElement::single(head), leaf, cobar_d(g));
        res.add(second.scaled(sign_of(head.degree())));
    }
    cache.emplace(t, res);
    return res;
}

}  // namespace

OperadElement differential(const OperadElement& e, Presentation pres) {
    std::map<TreeMonomial, OperadElement> cache;
    OperadElement out;
    for (const auto& [t, c] : e.terms()) {
        if (t.presentation() != pres)
            throw MixedPresentation("differential: element not in the requested presentation");
        out.add(differential_tree(t, cache).scaled(c));
    }
    return out;
}

bool DSquaredReport::pass() const {
    for (const auto& e : entries)
        if (!e.leftover.is_zero()) return false;
    return true;
}

DSquaredReport d_squared_report(int max_arity, Presentation pres) {
    if (max_arity < 2) throw std::invalid_argument("d_squared_report: max_arity >= 2 required");
    std::vector<Generator> gens;
    if (pres == Presentation::MP) {
        for (int n = 1; n <= max_arity; ++n) gens.push_back({Family::P, n});
        for (int n = 2; n <= max_arity; ++n) gens.push_back({Family::M, n});
    } else {
        for (int n = 1; n <= max_arity; ++n) gens.push_back({Family::Y, n});
        for (int n = 2; n <= max_arity; ++n) gens.push_back({Family::X, n});
    }
    DSquaredReport rep;
    rep.entries.resize(gens.size());
    parallel_for(gens.size(), [&](std::size_t i) {
        OperadElement d1 = cobar_d(gens[i]);
        rep.entries[i] = {gens[i], differential(d1, pres)};
    });
    return rep;
}

int weight_phi(Generator g) {
    if (g.fam == Family::M) return g.arity - 1;
    if (g.fam == Family::P) return 2 * g.arity - 1;
    throw WrongFamily("weight_phi: defined for m/P generators only");
}

namespace {

// Total order on m/P generators: P_1 < m_2 < P_2 < m_3 < P_3 < ...
int gen_rank(Generator g) {
    if (g.fam == Family::P) return 2 * g.arity - 2;
    if (g.fam == Family::M) return 2 * g.arity - 3;
    throw WrongFamily("gen_rank: defined for m/P generators only");
}

// phi-inflated word as a rank sequence: each letter repeated phi(letter) times.
std::vector<int> inflated(const std::vector<Generator>& word) {
    std::vector<int> out;
    for (const auto& g : word) {
        int r = gen_rank(g);
        for (int c = 0; c < weight_phi(g); ++c) out.push_back(r);
    }
    return out;
}

}  // namespace

Ordering compare_Xi(const TreeMonomial& a, const TreeMonomial& b) {
    if (a.presentation() != Presentation::MP || b.presentation() != Presentation::MP)
        throw MixedPresentation("compare_Xi: defined on the m/P presentation");
    int na = a.leaf_count(), nb = b.leaf_count();
    if (na != nb) return na > nb ? Ordering::GT : Ordering::LT;
    auto pa = a.path_encoding();
    auto pb = b.path_encoding();
    for (int leaf = 0; leaf < na; ++leaf) {
        int wa = 0, wb = 0;
        for (const auto& g : pa[leaf]) wa += weight_phi(g);
        for (const auto& g : pb[leaf]) wb += weight_phi(g);
        if (wa != wb) return wa > wb ? Ordering::GT : Ordering::LT;
        auto ia = inflated(pa[leaf]);
        auto ib = inflated(pb[leaf]);
        if (ia != ib) return ia > ib ? Ordering::GT : Ordering::LT;
    }
    return Ordering::EQ;
}

std::pair<TreeMonomial, Rational> leading_term(const OperadElement& e) {
    if (e.is_zero()) throw ZeroElement("leading_term: zero element");
    auto it = e.terms().begin();
    TreeMonomial best = it->first;
    Rational coeff = it->second;
    for (++it; it != e.terms().end(); ++it) {
        if (compare_Xi(it->first, best) == Ordering::GT) {
            best = it->first;
            coeff = it->second;
        }
    }
    return {best, coeff};
}

namespace {

struct TermParser {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse_term: " + what + " at position " + std::to_string(pos) +
                                    " in '" + s + "'");
    }

    // subterm := generator '(' child (',' child)* ')' | leaf-number
    // returns token stream and appends encountered leaf numbers
    std::vector<TreeMonomial::Token> parse_sub(std::vector<int>& leaf_numbers) {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end");
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            int v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                v = v * 10 + (s[pos++] - '0');
            leaf_numbers.push_back(v);
            return {{true, {}}};
        }
        char f = s[pos];
        Family fam;
        switch (f) {
            case 'm': fam = Family::M; break;
            case 'P': fam = Family::P; break;
            case 'x': fam = Family::X; break;
            case 'y': fam = Family::Y; break;
            default: fail("expected generator (m/P/x/y) or leaf number");
        }
        ++pos;
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected arity digits");
        int ar = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ar = ar * 10 + (s[pos++] - '0');
        skip_ws();
        if (pos >= s.size() || s[pos] != '(') fail("expected '('");
        ++pos;
        std::vector<TreeMonomial::Token> toks{{false, {fam, ar}}};
        for (int c = 0; c < ar; ++c) {
            if (c) {
                skip_ws();
                if (pos >= s.size() || s[pos] != ',') fail("expected ','");
                ++pos;
            }
            auto child = parse_sub(leaf_numbers);
            toks.insert(toks.end(), child.begin(), child.end());
        }
        skip_ws();
        if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
        ++pos;
        return toks;
    }
};

}  // namespace

TreeMonomial parse_term(const std::string& s) {
    TermParser p{s};
    std::vector<int> leaf_numbers;
    auto toks = p.parse_sub(leaf_numbers);
    p.skip_ws();
    if (p.pos != s.size()) p.fail("trailing characters");
    for (std::size_t i = 0; i < leaf_numbers.size(); ++i)
        if (leaf_numbers[i] != static_cast<int>(i) + 1)
            throw std::invalid_argument("parse_term: leaves must be numbered 1..n left to right in '" + s +
                                        "'");
    return TreeMonomial::from_tokens(std::move(toks));
}

}  // namespace njcalc
