#include "njcalc/graded.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace njcalc {

GradedSpace::GradedSpace(std::map<int, int> dims) : dims_(std::move(dims)) {
    for (auto it = dims_.begin(); it != dims_.end();) {
        if (it->second < 0) throw std::invalid_argument("GradedSpace: negative dimension");
        it = it->second == 0 ? dims_.erase(it) : std::next(it);
    }
    for (const auto& [d, n] : dims_) {
        degs_.push_back(d);
        cum_.push_back(total_);
        total_ += n;
    }
}

GradedSpace GradedSpace::ungraded(int dim) { return GradedSpace(std::map<int, int>{{0, dim}}); }

int GradedSpace::degree_of(int idx) const {
    if (idx < 0 || idx >= total_) throw std::out_of_range("GradedSpace: basis index out of range");
    auto it = std::upper_bound(cum_.begin(), cum_.end(), idx);
    return degs_[static_cast<std::size_t>(it - cum_.begin()) - 1];
}

int GradedSpace::index_of(int degree, int offset) const {
    for (std::size_t b = 0; b < degs_.size(); ++b)
        if (degs_[b] == degree) {
            if (offset < 0 || cum_[b] + offset >= (b + 1 < cum_.size() ? cum_[b + 1] : total_))
                throw std::out_of_range("GradedSpace: offset out of range in degree");
            return cum_[b] + offset;
        }
    throw std::out_of_range("GradedSpace: no component in degree " + std::to_string(degree));
}

int GradedSpace::dim_in_degree(int degree) const {
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
}

int koszul_sign(const std::vector<int>& arrangement, const std::vector<int>& degrees) {
    if (arrangement.size() != degrees.size())
        throw LengthMismatch("koszul_sign: permutation and degree list lengths differ");
    long e = 0;
    for (std::size_t j = 0; j < arrangement.size(); ++j)
        for (std::size_t k = j + 1; k < arrangement.size(); ++k)
            if (arrangement[j] > arrangement[k])
                e += static_cast<long>(degrees[arrangement[j]]) * degrees[arrangement[k]];
    return (e % 2 == 0) ? 1 : -1;
}

int chi_sign(const std::vector<int>& arrangement, const std::vector<int>& degrees) {
    long inv = 0;
    for (std::size_t j = 0; j < arrangement.size(); ++j)
        for (std::size_t k = j + 1; k < arrangement.size(); ++k)
            if (arrangement[j] > arrangement[k]) ++inv;
    int s = (inv % 2 == 0) ? 1 : -1;
    return s * koszul_sign(arrangement, degrees);
}

GradedMap::GradedMap(SpaceRef domain, SpaceRef codomain, int arity, int degree)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), arity_(arity), degree_(degree) {
    if (arity_ < 0) throw std::invalid_argument("GradedMap: negative arity");
}

void GradedMap::add_entry(const std::vector<int>& inputs, int out, const Rational& c) {
    if (static_cast<int>(inputs.size()) != arity_)
        throw LengthMismatch("GradedMap::add_entry: wrong number of inputs");
    if (c.is_zero()) return;
    int want = degree_;
    for (int i : inputs) want += domain_.degree_of(i);
    if (codomain_.degree_of(out) != want)
        throw DegreeViolation("GradedMap::add_entry: entry violates homogeneity (expected output degree " +
                              std::to_string(want) + ", got " + std::to_string(codomain_.degree_of(out)) +
                              ")");
    auto key = std::make_pair(inputs, out);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

Rational GradedMap::entry(const std::vector<int>& inputs, int out) const {
    auto it = entries_.find(std::make_pair(inputs, out));
    return it == entries_.end() ? Rational(0) : it->second;
}

GradedMap& GradedMap::operator+=(const GradedMap& o) {
    if (!(domain_ == o.domain_) || !(codomain_ == o.codomain_) || arity_ != o.arity_ || degree_ != o.degree_)
        throw CodomainMismatch("GradedMap::+=: shape mismatch");
    for (const auto& [k, v] : o.entries_) {
        auto it = entries_.find(k);
        if (it == entries_.end()) {
            entries_.emplace(k, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }
    return *this;
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    GradedMap out = *this;
    out += o;
    return out;
}

GradedMap GradedMap::scaled(const Rational& c) const {
    GradedMap out(domain_, codomain_, arity_, degree_);
    if (c.is_zero()) return out;
    for (const auto& [k, v] : entries_) out.entries_.emplace(k, v * c);
    return out;
}

bool GradedMap::operator==(const GradedMap& o) const {
    return domain_ == o.domain_ && codomain_ == o.codomain_ && arity_ == o.arity_ &&
           degree_ == o.degree_ && entries_ == o.entries_;
}

std::string GradedMap::str() const {
    std::ostringstream os;
    os << "map(arity " << arity_ << ", degree " << degree_ << "):";
    for (const auto& [k, v] : entries_) {
        os << " [";
        for (std::size_t i = 0; i < k.first.size(); ++i) os << (i ? "," : "") << k.first[i];
        os << "]->" << k.second << ": " << v.str() << ";";
    }
    return os.str();
}

namespace {

void check_brace_args(const GradedMap& f, const std::vector<GradedMap>& args) {
    for (const auto& g : args) {
        if (g.codomain() != f.domain())
            throw CodomainMismatch("brace: argument does not land in the outer map's domain space");
        if (g.domain() != f.domain())
            throw CodomainMismatch("brace: argument domain differs from the outer map's domain space");
    }
}

}  // namespace

GradedMap brace(const GradedMap& f, const std::vector<GradedMap>& args) {
    check_brace_args(f, args);
    int k = static_cast<int>(args.size());
    if (k > f.arity()) throw ArityUnderflow("brace: more arguments than input slots");
    int arity = f.arity();
    int degree = f.degree();
    for (const auto& g : args) {
        arity += g.arity() - 1;
        degree += g.degree();
    }
    GradedMap out(f.domain(), f.codomain(), arity, degree);
    if (k == 0) {
        out += f;
        return out;
    }

    // slot choices 0 <= q_1 < ... < q_k < arity(f)
    std::vector<int> slots(k);
    std::function<void(int, int)> choose = [&](int j, int start) {
        if (j == k) {
            // composite entries for this slot pattern
            for (const auto& [fk, fc] : f.entries()) {
                const auto& fin = fk.first;
                // collect matching argument entries per slot recursively
                std::vector<int> composite;
                std::function<void(int, std::size_t, const Rational&)> build =
                    [&](int slot_idx, std::size_t next_arg, const Rational& coeff) {
                        if (slot_idx == f.arity()) {
                            // Koszul sign: each g_j passes everything left of
                            // its argument block in the composite input
                            long e = 0;
                            {
                                std::size_t pos = 0;
                                std::size_t aj = 0;
                                for (int s = 0; s < f.arity(); ++s) {
                                    if (aj < slots.size() && s == slots[aj]) {
                                        long before = 0;
                                        for (std::size_t t = 0; t < pos; ++t)
                                            before += f.domain().degree_of(composite[t]);
                                        e += static_cast<long>(args[aj].degree()) * before;
                                        pos += args[aj].arity();
                                        ++aj;
                                    } else {
                                        ++pos;
                                    }
                                }
                            }
                            out.add_entry(composite, fk.second,
                                          coeff * ((e % 2 == 0) ? Rational(1) : Rational(-1)));
                            return;
                        }
                        if (next_arg < slots.size() && slot_idx == slots[next_arg]) {
                            for (const auto& [gk, gc] : args[next_arg].entries()) {
                                if (gk.second != fin[slot_idx]) continue;
                                std::size_t base = composite.size();
                                composite.insert(composite.end(), gk.first.begin(), gk.first.end());
                                build(slot_idx + 1, next_arg + 1, coeff * gc);
                                composite.resize(base);
                            }
                        } else {
                            composite.push_back(fin[slot_idx]);
                            build(slot_idx + 1, next_arg, coeff);
                            composite.pop_back();
                        }
                    };
                build(0, 0, fc);
            }
            return;
        }
        for (int s = start; s < f.arity() - (k - 1 - j); ++s) {
            slots[j] = s;
            choose(j + 1, s + 1);
        }
    };
    choose(0, 0);
    return out;
}

GradedMap insert_at(const GradedMap& f, int slot, const GradedMap& g) {
    if (slot < 0 || slot >= f.arity()) throw ArityUnderflow("insert_at: slot out of range");
    if (g.codomain() != f.domain() || g.domain() != f.domain())
        throw CodomainMismatch("insert_at: argument spaces do not match");
    GradedMap out(f.domain(), f.codomain(), f.arity() + g.arity() - 1, f.degree() + g.degree());
    for (const auto& [fk, fc] : f.entries()) {
        const auto& fin = fk.first;
        for (const auto& [gk, gc] : g.entries()) {
            if (gk.second != fin[slot]) continue;
            std::vector<int> composite;
            composite.reserve(out.arity());
            composite.insert(composite.end(), fin.begin(), fin.begin() + slot);
            composite.insert(composite.end(), gk.first.begin(), gk.first.end());
            composite.insert(composite.end(), fin.begin() + slot + 1, fin.end());
            long before = 0;
            for (int t = 0; t < slot; ++t) before += f.domain().degree_of(fin[t]);
            long e = static_cast<long>(g.degree()) * before;
            out.add_entry(composite, fk.second, fc * gc * ((e % 2 == 0) ? Rational(1) : Rational(-1)));
        }
    }
    return out;
}

GradedMap gerstenhaber(const GradedMap& f, const GradedMap& h) {
    if (f.codomain() != f.domain() || h.codomain() != h.domain() || f.domain() != h.domain())
        throw CodomainMismatch("gerstenhaber: both maps must be endomorphism-type on one space");
    GradedMap fh = brace(f, {h});
    GradedMap hf = brace(h, {f});
    long e = static_cast<long>(f.degree()) * h.degree();
    return fh + hf.scaled((e % 2 == 0) ? Rational(-1) : Rational(1));
}

GradedMap suspend_output(const GradedMap& f) {
    GradedMap out(f.domain(), f.codomain().suspended(1), f.arity(), f.degree() + 1);
    for (const auto& [k, v] : f.entries()) out.add_entry(k.first, k.second, v);
    return out;
}

GradedMap desuspend_output(const GradedMap& f) {
    GradedMap out(f.domain(), f.codomain().suspended(-1), f.arity(), f.degree() - 1);
    for (const auto& [k, v] : f.entries()) out.add_entry(k.first, k.second, v);
    return out;
}

namespace {

// f o s^n (domain drops a suspension) or f o (s^{-1})^n (domain gains one).
// Tensor Koszul sign: the a-th operator passes the first a-1 arguments,
// giving exponent sum_a (n-a) * deg(x_a) over the *new* domain degrees.
GradedMap precompose_shift(const GradedMap& f, int dir) {
    SpaceRef new_dom = f.domain().suspended(-dir);
    GradedMap out(new_dom, f.codomain(), f.arity(), f.degree() + dir * f.arity());
    int n = f.arity();
    for (const auto& [k, v] : f.entries()) {
        long e = 0;
        for (int a = 0; a < n; ++a) e += static_cast<long>(n - 1 - a) * new_dom.degree_of(k.first[a]);
        out.add_entry(k.first, k.second, (e % 2 == 0) ? v : -v);
    }
    return out;
}

Rational halfturn_sign(int n) { return pow_sign(static_cast<long>(n) * (n - 1) / 2); }

}  // namespace

GradedMap tilde(const GradedMap& f) { return desuspend_output(precompose_shift(f, +1)); }

GradedMap tilde_inv(const GradedMap& m) {
    return precompose_shift(suspend_output(m), -1).scaled(halfturn_sign(m.arity()));
}

GradedMap hat(const GradedMap& g) { return precompose_shift(g, +1); }

GradedMap hat_inv(const GradedMap& p) {
    return precompose_shift(p, -1).scaled(halfturn_sign(p.arity()));
}

}  // namespace njcalc
