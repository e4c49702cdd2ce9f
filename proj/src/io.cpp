#include "njcalc/io.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace njcalc {

using nlohmann::json;

namespace {

Rational rat(const json& j, const char* where) {
    try {
        if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw MalformedInput(std::string(where) + ": " + e.what());
    }
    throw MalformedInput(std::string(where) + ": rationals must be integers or \"p/q\" strings");
}

std::size_t idx(const json& j, std::size_t bound, const char* where) {
    if (!j.is_number_integer() || j.get<long long>() < 0 ||
        j.get<unsigned long long>() >= bound)
        throw MalformedInput(std::string(where) + ": index out of range (bound " + std::to_string(bound) +
                             ")");
    return j.get<std::size_t>();
}

LinearOperator load_operator(const json& j, std::size_t dim, const char* where) {
    if (!j.is_array() || j.size() != dim) throw MalformedInput(std::string(where) + ": expected " +
                                                               std::to_string(dim) + " matrix rows");
    LinearOperator op(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        if (!j[r].is_array() || j[r].size() != dim)
            throw MalformedInput(std::string(where) + ": row length mismatch");
        for (std::size_t c = 0; c < dim; ++c) op.at(r, c) = rat(j[r][c], where);
    }
    return op;
}

json operator_to_json(const LinearOperator& op) {
    json rows = json::array();
    for (std::size_t r = 0; r < op.dim; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < op.dim; ++c) row.push_back(op.at(r, c).str());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw MalformedInput(path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

AlgebraFile load_algebra(const json& j) {
    if (!j.is_object() || !j.contains("basis") || !j["basis"].is_array())
        throw MalformedInput("algebra file: missing \"basis\" array");
    std::size_t dim = j["basis"].size();
    if (dim == 0) throw MalformedInput("algebra file: empty basis");
    AlgebraPresentation A(dim);
    for (std::size_t i = 0; i < dim; ++i)
        A.basis_labels[i] = j["basis"][i].is_string() ? j["basis"][i].get<std::string>()
                                                      : "e" + std::to_string(i);
    if (j.contains("mult")) {
        for (const auto& t : j["mult"]) {
            if (!t.is_array() || t.size() != 4) throw MalformedInput("algebra file: mult entries are [i,j,k,c]");
            std::size_t a = idx(t[0], dim, "mult"), b = idx(t[1], dim, "mult"), c = idx(t[2], dim, "mult");
            A.mu(a, b, c) += rat(t[3], "mult");
        }
    }
    LinearOperator P = j.contains("operator") ? load_operator(j["operator"], dim, "operator")
                                              : LinearOperator(dim);
    AlgebraFile out{NijenhuisAlgebra{A, P}, std::nullopt};

    if (j.contains("module")) out.M = load_module(j["module"], dim);
    return out;
}

NijenhuisBimodule load_module(const json& jin, std::size_t alg_dim) {
    const json& m = jin.contains("module") ? jin["module"] : jin;
    if (!m.contains("dim") || !m["dim"].is_number_integer())
        throw MalformedInput("module: needs \"dim\"");
    std::size_t md = m["dim"].get<std::size_t>();
    BimodulePresentation B(alg_dim, md);
    if (m.contains("left"))
        for (const auto& t : m["left"]) {
            if (!t.is_array() || t.size() != 4) throw MalformedInput("module: left entries are [i,k,l,c]");
            B.lambda(idx(t[0], alg_dim, "left"), idx(t[1], md, "left"), idx(t[2], md, "left")) +=
                rat(t[3], "left");
        }
    if (m.contains("right"))
        for (const auto& t : m["right"]) {
            if (!t.is_array() || t.size() != 4) throw MalformedInput("module: right entries are [k,i,l,c]");
            B.rho(idx(t[0], md, "right"), idx(t[1], alg_dim, "right"), idx(t[2], md, "right")) +=
                rat(t[3], "right");
        }
    LinearOperator PM =
        m.contains("operator") ? load_operator(m["operator"], md, "module operator") : LinearOperator(md);
    return NijenhuisBimodule{B, PM};
}

AlgebraFile load_algebra_file(const std::string& path) { return load_algebra(load_json_file(path)); }

json algebra_to_json(const NijenhuisAlgebra& N, const NijenhuisBimodule* M) {
    json j;
    j["basis"] = N.algebra.basis_labels;
    json mult = json::array();
    for (std::size_t a = 0; a < N.algebra.dim; ++a)
        for (std::size_t b = 0; b < N.algebra.dim; ++b)
            for (std::size_t c = 0; c < N.algebra.dim; ++c)
                if (!N.algebra.mu(a, b, c).is_zero())
                    mult.push_back({a, b, c, N.algebra.mu(a, b, c).str()});
    j["mult"] = mult;
    j["operator"] = operator_to_json(N.operator_P);
    if (M) {
        json m;
        m["dim"] = M->module.dim;
        json left = json::array(), right = json::array();
        for (std::size_t a = 0; a < N.algebra.dim; ++a)
            for (std::size_t k = 0; k < M->module.dim; ++k)
                for (std::size_t l = 0; l < M->module.dim; ++l) {
                    if (!M->module.lambda(a, k, l).is_zero())
                        left.push_back({a, k, l, M->module.lambda(a, k, l).str()});
                    if (!M->module.rho(k, a, l).is_zero())
                        right.push_back({k, a, l, M->module.rho(k, a, l).str()});
                }
        m["left"] = left;
        m["right"] = right;
        m["operator"] = operator_to_json(M->operator_PM);
        j["module"] = m;
    }
    return j;
}

namespace {

SpacePtr load_degrees(const json& j) {
    if (!j.is_object()) throw MalformedInput("graded file: \"degrees\" must be an object");
    std::map<int, int> dims;
    for (const auto& [k, v] : j.items()) {
        try {
            dims[std::stoi(k)] = v.get<int>();
        } catch (const std::exception&) {
            throw MalformedInput("graded file: bad degree entry \"" + k + "\"");
        }
    }
    return std::make_shared<const GradedSpace>(GradedSpace(dims));
}

struct MapName {
    char family;  // 'm', 'P', 'b', 'R'
    int arity;
};

MapName parse_map_name(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'm' && s[0] != 'P' && s[0] != 'b' && s[0] != 'R'))
        throw MalformedInput("graded file: map names are m<k>, P<k>, b<k> or R<k>; got \"" + s + "\"");
    try {
        return {s[0], std::stoi(s.substr(1))};
    } catch (const std::exception&) {
        throw MalformedInput("graded file: bad arity in map name \"" + s + "\"");
    }
}

GradedMap load_map_entries(const json& jmap, SpaceRef domain, SpaceRef codomain, int arity, int degree) {
    GradedMap m(domain, codomain, arity, degree);
    if (!jmap.contains("entries")) return m;
    for (const auto& e : jmap["entries"]) {
        if (!e.is_array() || static_cast<int>(e.size()) != arity + 2)
            throw MalformedInput("graded file: entries are [out, in_1..in_arity, coeff]");
        int out = static_cast<int>(idx(e[0], static_cast<std::size_t>(codomain.dim()), "map entry"));
        std::vector<int> ins(static_cast<std::size_t>(arity));
        for (int a = 0; a < arity; ++a)
            ins[static_cast<std::size_t>(a)] =
                static_cast<int>(idx(e[static_cast<std::size_t>(a) + 1],
                                     static_cast<std::size_t>(domain.dim()), "map entry"));
        try {
            m.add_entry(ins, out, rat(e[static_cast<std::size_t>(arity) + 1], "map entry"));
        } catch (const DegreeViolation& d) {
            throw MalformedInput(std::string("graded file: ") + d.what());
        }
    }
    return m;
}

}  // namespace

GradedStructureFile load_graded_structure(const json& j) {
    if (!j.is_object() || !j.contains("degrees")) throw MalformedInput("graded file: missing \"degrees\"");
    SpacePtr V = load_degrees(j["degrees"]);
    DeformationElement alpha;
    alpha.space = V;
    SpaceRef sV{V, 1}, V0{V, 0};
    std::set<std::pair<bool, int>> declared;
    if (j.contains("maps")) {
        for (const auto& jm : j["maps"]) {
            if (!jm.contains("name")) throw MalformedInput("graded file: map without \"name\"");
            MapName nm = parse_map_name(jm["name"].get<std::string>());
            if (nm.arity < 1) throw MalformedInput("graded file: arity must be >= 1");
            if (jm.contains("arity") && jm["arity"].get<int>() != nm.arity)
                throw MalformedInput("graded file: arity field conflicts with the map name");
            GradedMap loaded;
            bool is_alg = nm.family == 'm' || nm.family == 'b';
            switch (nm.family) {
                case 'm':
                    loaded = tilde_inv(load_map_entries(jm, V0, V0, nm.arity, nm.arity - 2));
                    break;
                case 'P':
                    loaded = hat_inv(load_map_entries(jm, V0, V0, nm.arity, nm.arity - 1));
                    break;
                case 'b':
                    loaded = load_map_entries(jm, sV, sV, nm.arity, -1);
                    break;
                case 'R':
                    loaded = load_map_entries(jm, sV, V0, nm.arity, -1);
                    break;
            }
            if (!declared.insert({is_alg, nm.arity}).second)
                throw MalformedInput("graded file: duplicate component of arity " +
                                     std::to_string(nm.arity));
            if (!loaded.is_zero()) (is_alg ? alpha.alg : alpha.njo).emplace(nm.arity, loaded);
        }
    }
    alpha.validate();
    return GradedStructureFile{alpha};
}

GradedStructureFile load_graded_structure_file(const std::string& path) {
    return load_graded_structure(load_json_file(path));
}

json graded_structure_to_json(const DeformationElement& alpha) {
    json j;
    json degs = json::object();
    for (const auto& [d, n] : alpha.space->components()) degs[std::to_string(d)] = n;
    j["degrees"] = degs;
    json maps = json::array();
    auto emit = [&](char fam, int ar, const GradedMap& m) {
        json jm;
        jm["name"] = std::string(1, fam) + std::to_string(ar);
        jm["arity"] = ar;
        jm["degree"] = m.degree();
        json entries = json::array();
        for (const auto& [k, v] : m.entries()) {
            json e = json::array();
            e.push_back(k.second);
            for (int in : k.first) e.push_back(in);
            e.push_back(v.str());
            entries.push_back(e);
        }
        jm["entries"] = entries;
        maps.push_back(jm);
    };
    for (const auto& [ar, m] : alpha.alg) emit('b', ar, m);
    for (const auto& [ar, m] : alpha.njo) emit('R', ar, m);
    j["maps"] = maps;
    return j;
}

RBLiftInput load_rb_input(const json& algebra_file, const json& module_file, const json& operator_file) {
    GradedStructureFile af = load_graded_structure(algebra_file);
    if (!af.alpha.njo.empty())
        throw MalformedInput("rb lift: the algebra file must not carry operator components");
    if (!module_file.is_object() || !module_file.contains("degrees"))
        throw MalformedInput("rb lift: module file missing \"degrees\"");
    SpacePtr VM = load_degrees(module_file["degrees"]);

    SumSpace sum = direct_sum(*af.alpha.space, *VM);
    SpaceRef sW{sum.total, 1}, W{sum.total, 0};

    AInfinityOneBimodule data;
    data.sum = sum;
    // re-index the algebra operations into the total space
    for (const auto& [k, b] : af.alpha.alg) {
        GradedMap m(sW, sW, k, -1);
        for (const auto& [key, c] : b.entries()) {
            std::vector<int> ins;
            for (int in : key.first) ins.push_back(sum.embed_a[static_cast<std::size_t>(in)]);
            m.add_entry(ins, sum.embed_a[static_cast<std::size_t>(key.second)], c);
        }
        data.mfrak.emplace(k, m);
    }
    if (module_file.contains("maps")) {
        for (const auto& jm : module_file["maps"]) {
            std::string name = jm.value("name", "");
            if (name.rfind("rho", 0) != 0)
                throw MalformedInput("rb lift: module maps are named rho<k>");
            int ar;
            try {
                ar = std::stoi(name.substr(3));
            } catch (const std::exception&) {
                throw MalformedInput("rb lift: bad arity in \"" + name + "\"");
            }
            int slot = jm.value("slot", 1);
            if (slot < 1 || slot > ar) throw MalformedInput("rb lift: slot out of range in \"" + name + "\"");
            auto it = data.rho.find(ar);
            if (it == data.rho.end()) it = data.rho.emplace(ar, GradedMap(sW, sW, ar, -1)).first;
            if (!jm.contains("entries")) continue;
            for (const auto& e : jm["entries"]) {
                if (!e.is_array() || static_cast<int>(e.size()) != ar + 2)
                    throw MalformedInput("rb lift: rho entries are [out_m, in_1..in_k, coeff]");
                std::vector<int> ins(static_cast<std::size_t>(ar));
                for (int a = 0; a < ar; ++a) {
                    bool is_m = (a + 1 == slot);
                    std::size_t bound = is_m ? static_cast<std::size_t>(VM->total_dim())
                                             : static_cast<std::size_t>(af.alpha.space->total_dim());
                    std::size_t raw = idx(e[static_cast<std::size_t>(a) + 1], bound, "rho entry");
                    ins[static_cast<std::size_t>(a)] = is_m ? sum.embed_m[raw] : sum.embed_a[raw];
                }
                std::size_t out_raw = idx(e[0], static_cast<std::size_t>(VM->total_dim()), "rho entry");
                try {
                    it->second.add_entry(ins, sum.embed_m[out_raw],
                                         rat(e[static_cast<std::size_t>(ar) + 1], "rho entry"));
                } catch (const DegreeViolation& d) {
                    throw MalformedInput(std::string("rb lift: ") + d.what());
                }
            }
        }
    }
    for (auto it = data.rho.begin(); it != data.rho.end();)
        it = it->second.is_zero() ? data.rho.erase(it) : std::next(it);

    RBLiftInput out{data, {}};
    if (operator_file.contains("maps")) {
        for (const auto& jm : operator_file["maps"]) {
            std::string name = jm.value("name", "");
            if (name.rfind("B", 0) != 0) throw MalformedInput("rb lift: operator maps are named B<k>");
            int ar;
            try {
                ar = std::stoi(name.substr(1));
            } catch (const std::exception&) {
                throw MalformedInput("rb lift: bad arity in \"" + name + "\"");
            }
            GradedMap b(sW, W, ar, -1);
            if (jm.contains("entries"))
                for (const auto& e : jm["entries"]) {
                    if (!e.is_array() || static_cast<int>(e.size()) != ar + 2)
                        throw MalformedInput("rb lift: B entries are [out_a, in_m.., coeff]");
                    std::vector<int> ins(static_cast<std::size_t>(ar));
                    for (int a = 0; a < ar; ++a)
                        ins[static_cast<std::size_t>(a)] = sum.embed_m[idx(
                            e[static_cast<std::size_t>(a) + 1],
                            static_cast<std::size_t>(VM->total_dim()), "B entry")];
                    std::size_t out_raw =
                        idx(e[0], static_cast<std::size_t>(af.alpha.space->total_dim()), "B entry");
                    try {
                        b.add_entry(ins, sum.embed_a[out_raw],
                                    rat(e[static_cast<std::size_t>(ar) + 1], "B entry"));
                    } catch (const DegreeViolation& d) {
                        throw MalformedInput(std::string("rb lift: ") + d.what());
                    }
                }
            if (!b.is_zero()) out.B.B.emplace(ar, b);
        }
    }
    return out;
}

json matrix_to_json(const SparseMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json entries = json::array();
    for (const auto& [rc, v] : m.entries()) entries.push_back({rc.first, rc.second, v.str()});
    j["entries"] = entries;
    return j;
}

}  // namespace njcalc
