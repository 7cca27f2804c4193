#include "hopfbraid/io.hpp"

#include <fstream>
#include <sstream>

namespace hopfbraid::io {

namespace {

std::string at_index(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string at_key(const std::string& where, const std::string& key) { return where + "." + key; }

const json& need(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) throw InputError(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
    return *it;
}

const json* maybe(const json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::size_t need_size(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw InputError(where + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

void need_array(const json& j, std::size_t n, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array");
    if (j.size() != n)
        throw InputError(where + ": expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
}

std::vector<Scalar> vector_from_json(const Field& f, const json& j, std::size_t n, const std::string& where,
                                     Diagnostics& diag) {
    need_array(j, n, where);
    std::vector<Scalar> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(scalar_from_json(f, j[i], at_index(where, i), diag));
    return out;
}

using Cube = std::vector<std::vector<std::vector<Scalar>>>;

Cube cube_from_json(const Field& f, const json& j, std::size_t a, std::size_t b, std::size_t c,
                    const std::string& where, Diagnostics& diag) {
    need_array(j, a, where);
    Cube out(a);
    for (std::size_t i = 0; i < a; ++i) {
        need_array(j[i], b, at_index(where, i));
        for (std::size_t k = 0; k < b; ++k)
            out[i].push_back(vector_from_json(f, j[i][k], c, at_index(at_index(where, i), k), diag));
    }
    return out;
}

// out[i][j][k] = m.at(row(i,j,k), col(i,j,k))
template <typename Pos>
json cube_to_json(const SparseMatrix& m, std::size_t a, std::size_t b, std::size_t c, Pos&& pos) {
    json out = json::array();
    for (std::size_t i = 0; i < a; ++i) {
        json plane = json::array();
        for (std::size_t j = 0; j < b; ++j) {
            json line = json::array();
            for (std::size_t k = 0; k < c; ++k) {
                auto [r, col] = pos(i, j, k);
                line.push_back(scalar_to_json(m.at(r, col)));
            }
            plane.push_back(std::move(line));
        }
        out.push_back(std::move(plane));
    }
    return out;
}

json vector_to_json(std::span<const Scalar> v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(scalar_to_json(s));
    return out;
}

Space space_from_json(const json& j, std::size_t dim, const std::string& default_label, const std::string& where) {
    std::string label = default_label;
    if (const json* l = maybe(j, "label")) {
        if (!l->is_string()) throw InputError(at_key(where, "label") + ": expected a string");
        label = l->get<std::string>();
    }
    std::vector<std::string> names;
    if (const json* b = maybe(j, "basis")) {
        need_array(*b, dim, at_key(where, "basis"));
        for (std::size_t i = 0; i < dim; ++i) {
            if (!(*b)[i].is_string()) throw InputError(at_index(at_key(where, "basis"), i) + ": expected a string");
            names.push_back((*b)[i].get<std::string>());
        }
    }
    if (dim == 0) throw InputError(at_key(where, "dim") + ": must be positive");
    try {
        return Space(dim, label, std::move(names));
    } catch (const std::invalid_argument& e) {
        throw InputError(where + ": " + e.what());
    }
}

Field field_of_file(const json& j, const std::string& where) { return field_from_json(need(j, "field", where), at_key(where, "field")); }

void require_field(const Field& expected, const Field& got, const std::string& where) {
    if (!(expected == got))
        throw InputError(where + ": field mismatch, file says " + got.name() + " but its bialgebra is over " +
                         expected.name());
}

BialgebraRef resolve_base(const json& j, const std::filesystem::path& dir, const std::string& where, Diagnostics& diag) {
    const json& ref = need(j, "bialgebra", where);
    if (ref.is_string()) return load_bialgebra(dir / ref.get<std::string>(), diag);
    if (ref.is_object())
        return std::make_shared<const Bialgebra>(bialgebra_from_json(ref, at_key(where, "bialgebra"), diag));
    throw InputError(at_key(where, "bialgebra") + ": expected a file path or an inline bialgebra");
}

json base_to_json(const Bialgebra& b, const BaseReference& ref) {
    if (ref.path) return *ref.path;
    return bialgebra_to_json(b);
}

std::string file_where(const std::filesystem::path& path) { return path.filename().string(); }

}  // namespace

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
}

std::string canonical_text(const json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << canonical_text(j);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
}

json field_to_json(const Field& f) {
    if (f.is_prime()) return json{{"kind", "Fp"}, {"p", f.characteristic()}};
    return json{{"kind", "Q"}};
}

Field field_from_json(const json& j, const std::string& where) {
    const json& kind = need(j, "kind", where);
    if (kind == "Q") return Field::rationals();
    if (kind == "Fp") {
        const std::size_t p = need_size(need(j, "p", where), at_key(where, "p"));
        try {
            return Field::prime(p);
        } catch (const std::exception& e) {
            throw InputError(at_key(where, "p") + ": " + e.what());
        }
    }
    throw InputError(at_key(where, "kind") + ": expected \"Q\" or \"Fp\"");
}

Field field_from_flag(const std::string& text) {
    try {
        return Field::from_name(text);
    } catch (const std::exception& e) {
        throw InputError("--field: " + std::string(e.what()));
    }
}

json scalar_to_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from_json(const Field& f, const json& j, const std::string& where, Diagnostics& diag) {
    std::string text;
    if (j.is_string())
        text = j.get<std::string>();
    else if (j.is_number_integer())
        text = j.dump();
    else
        throw InputError(where + ": expected a coefficient string such as \"-3/4\"");
    Scalar s;
    try {
        s = f.parse(text, where);
    } catch (const ParseError& e) {
        throw InputError(e.what());
    }
    if (f.is_prime() && s.to_string() != text)
        diag.warnings.push_back(where + ": \"" + text + "\" normalized to " + s.to_string() + " mod " +
                                std::to_string(f.characteristic()));
    return s;
}

json matrix_to_json(const SparseMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

SparseMatrix matrix_from_json(const Field& f, const json& j, std::size_t rows, std::size_t cols,
                              const std::string& where, Diagnostics& diag) {
    need_array(j, rows, where);
    SparseMatrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto line = vector_from_json(f, j[r], cols, at_index(where, r), diag);
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, line[c]);
    }
    return m;
}

json space_to_json(const Space& s) {
    json names = json::array();
    for (std::size_t i = 0; i < s.dim; ++i) names.push_back(s.basis_name(i));
    return json{{"dim", s.dim}, {"label", s.label}, {"basis", names}};
}

json bialgebra_to_json(const Bialgebra& b) {
    const std::size_t d = b.dim();
    json out = space_to_json(b.space);
    out["field"] = field_to_json(b.field());
    out["mul"] = cube_to_json(b.mu.matrix(), d, d, d, [d](auto i, auto j, auto k) { return std::pair{k, i * d + j}; });
    out["comul"] = cube_to_json(b.delta.matrix(), d, d, d, [d](auto i, auto j, auto k) { return std::pair{j * d + k, i}; });
    json unit = json::array(), counit = json::array();
    for (std::size_t i = 0; i < d; ++i) {
        unit.push_back(scalar_to_json(b.nu.matrix().at(i, 0)));
        counit.push_back(scalar_to_json(b.eps.matrix().at(0, i)));
    }
    out["unit"] = unit;
    out["counit"] = counit;
    if (b.antipode) {
        json s = json::array();
        for (std::size_t i = 0; i < d; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < d; ++j) row.push_back(scalar_to_json(b.antipode->matrix().at(j, i)));
            s.push_back(std::move(row));
        }
        out["antipode"] = s;
    }
    return out;
}

Bialgebra bialgebra_from_json(const json& j, const std::string& where, Diagnostics& diag) {
    const Field f = field_of_file(j, where);
    const std::size_t d = need_size(need(j, "dim", where), at_key(where, "dim"));
    Space space = space_from_json(j, d, "H", where);
    const Cube mul = cube_from_json(f, need(j, "mul", where), d, d, d, at_key(where, "mul"), diag);
    const Cube comul = cube_from_json(f, need(j, "comul", where), d, d, d, at_key(where, "comul"), diag);
    const auto unit = vector_from_json(f, need(j, "unit", where), d, at_key(where, "unit"), diag);
    const auto counit = vector_from_json(f, need(j, "counit", where), d, at_key(where, "counit"), diag);
    std::optional<std::vector<std::vector<Scalar>>> antipode;
    if (const json* s = maybe(j, "antipode")) {
        need_array(*s, d, at_key(where, "antipode"));
        antipode.emplace();
        for (std::size_t i = 0; i < d; ++i)
            antipode->push_back(vector_from_json(f, (*s)[i], d, at_index(at_key(where, "antipode"), i), diag));
    }
    return bialgebra_from_constants(f, std::move(space), mul, unit, comul, counit, antipode);
}

BialgebraRef load_bialgebra(const std::filesystem::path& path, Diagnostics& diag) {
    return std::make_shared<const Bialgebra>(bialgebra_from_json(read_json(path), file_where(path), diag));
}

YDModule ModuleFile::yd() const {
    if (!coaction) throw InputError("module '" + space.label + "' has no coaction");
    return YDModule{base, space, action, *coaction};
}

YDModuleAlgebra ModuleFile::yd_algebra() const {
    if (!mu || !nu) throw InputError("module '" + space.label + "' has no mul/unit");
    return YDModuleAlgebra{yd(), *mu, *nu};
}

json module_to_json(const HModule& m, const BaseReference& ref) {
    const std::size_t dh = m.base->dim(), dm = m.space.dim;
    json out = space_to_json(m.space);
    out["field"] = field_to_json(m.base->field());
    out["bialgebra"] = base_to_json(*m.base, ref);
    out["action"] = cube_to_json(m.action.matrix(), dh, dm, dm, [dm](auto i, auto a, auto b) { return std::pair{b, i * dm + a}; });
    return out;
}

json module_to_json(const YDModule& m, const BaseReference& ref) {
    const std::size_t dh = m.base->dim(), dm = m.space.dim;
    json out = module_to_json(m.module(), ref);
    out["coaction"] =
        cube_to_json(m.coaction.matrix(), dm, dm, dh, [dh](auto a, auto b, auto i) { return std::pair{b * dh + i, a}; });
    return out;
}

json module_to_json(const YDModuleAlgebra& m, const BaseReference& ref) {
    const std::size_t dm = m.yd.space.dim;
    json out = module_to_json(m.yd, ref);
    out["mul"] = cube_to_json(m.mu.matrix(), dm, dm, dm, [dm](auto a, auto b, auto c) { return std::pair{c, a * dm + b}; });
    json unit = json::array();
    for (std::size_t c = 0; c < dm; ++c) unit.push_back(scalar_to_json(m.nu.matrix().at(c, 0)));
    out["unit"] = unit;
    return out;
}

ModuleFile module_from_json(const json& j, const std::filesystem::path& dir, const std::string& where,
                            Diagnostics& diag) {
    BialgebraRef base = resolve_base(j, dir, where, diag);
    const Field& f = base->field();
    require_field(f, field_of_file(j, where), where);
    const std::size_t dh = base->dim();
    const std::size_t dm = need_size(need(j, "dim", where), at_key(where, "dim"));
    Space space = space_from_json(j, dm, "M", where);
    const Space& hs = base->space;

    const Cube act = cube_from_json(f, need(j, "action", where), dh, dm, dm, at_key(where, "action"), diag);
    SparseMatrix am(f, dm, dh * dm);
    for (std::size_t i = 0; i < dh; ++i)
        for (std::size_t a = 0; a < dm; ++a)
            for (std::size_t b = 0; b < dm; ++b) am.set(b, i * dm + a, act[i][a][b]);
    ModuleFile out{base, space, LinMap({hs, space}, {space}, std::move(am)), std::nullopt, std::nullopt, std::nullopt};

    if (const json* co = maybe(j, "coaction")) {
        const Cube c = cube_from_json(f, *co, dm, dm, dh, at_key(where, "coaction"), diag);
        SparseMatrix cm(f, dm * dh, dm);
        for (std::size_t a = 0; a < dm; ++a)
            for (std::size_t b = 0; b < dm; ++b)
                for (std::size_t i = 0; i < dh; ++i) cm.set(b * dh + i, a, c[a][b][i]);
        out.coaction = LinMap({space}, {space, hs}, std::move(cm));
    }
    const json* mul = maybe(j, "mul");
    const json* unit = maybe(j, "unit");
    if ((mul == nullptr) != (unit == nullptr)) throw InputError(where + ": 'mul' and 'unit' must be given together");
    if (mul) {
        const Cube m = cube_from_json(f, *mul, dm, dm, dm, at_key(where, "mul"), diag);
        SparseMatrix mm(f, dm, dm * dm);
        for (std::size_t a = 0; a < dm; ++a)
            for (std::size_t b = 0; b < dm; ++b)
                for (std::size_t c = 0; c < dm; ++c) mm.set(c, a * dm + b, m[a][b][c]);
        const auto u = vector_from_json(f, *unit, dm, at_key(where, "unit"), diag);
        SparseMatrix um(f, dm, 1);
        for (std::size_t c = 0; c < dm; ++c) um.set(c, 0, u[c]);
        out.mu = LinMap({space, space}, {space}, std::move(mm));
        out.nu = LinMap({}, {space}, std::move(um));
    }
    return out;
}

ModuleFile load_module(const std::filesystem::path& path, Diagnostics& diag) {
    return module_from_json(read_json(path), path.parent_path(), file_where(path), diag);
}

json rmatrix_to_json(const RMatrix& r, const BaseReference& ref) {
    json out{{"field", field_to_json(r.base->field())},
             {"bialgebra", base_to_json(*r.base, ref)},
             {"dim", r.base->dim()},
             {"vector", vector_to_json(r.vector)}};
    if (r.inverse) out["inverse"] = vector_to_json(*r.inverse);
    return out;
}

RMatrix rmatrix_from_json(const json& j, const std::filesystem::path& dir, const std::string& where,
                          Diagnostics& diag) {
    BialgebraRef base = resolve_base(j, dir, where, diag);
    const Field& f = base->field();
    require_field(f, field_of_file(j, where), where);
    const std::size_t d = need_size(need(j, "dim", where), at_key(where, "dim"));
    if (d != base->dim())
        throw InputError(at_key(where, "dim") + ": " + std::to_string(d) + " differs from the bialgebra dimension " +
                         std::to_string(base->dim()));
    RMatrix r{base, vector_from_json(f, need(j, "vector", where), d * d, at_key(where, "vector"), diag), std::nullopt};
    if (const json* inv = maybe(j, "inverse")) r.inverse = vector_from_json(f, *inv, d * d, at_key(where, "inverse"), diag);
    return r;
}

RMatrix load_rmatrix(const std::filesystem::path& path, Diagnostics& diag) {
    return rmatrix_from_json(read_json(path), path.parent_path(), file_where(path), diag);
}

json system_to_json(const BraidedSystem& s) {
    json comps = json::array();
    for (const auto& c : s.components()) comps.push_back(space_to_json(c));
    json sig = json::object();
    for (const auto& [key, map] : s.sigmas())
        sig[std::to_string(key.first + 1) + "," + std::to_string(key.second + 1)] = matrix_to_json(map.matrix());
    return json{{"field", field_to_json(s.field())}, {"components", comps}, {"sigma", sig}};
}

BraidedSystem system_from_json(const json& j, const std::string& where, Diagnostics& diag) {
    const Field f = field_of_file(j, where);
    const json& comps = need(j, "components", where);
    if (!comps.is_array() || comps.empty()) throw InputError(at_key(where, "components") + ": expected a non-empty array");
    std::vector<Space> spaces;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string w = at_index(at_key(where, "components"), i);
        spaces.push_back(space_from_json(comps[i], need_size(need(comps[i], "dim", w), at_key(w, "dim")),
                                         "V" + std::to_string(i + 1), w));
    }
    const json& sig = need(j, "sigma", where);
    if (!sig.is_object()) throw InputError(at_key(where, "sigma") + ": expected an object keyed \"i,j\"");
    std::map<BraidedSystem::Key, LinMap> maps;
    for (const auto& [key, value] : sig.items()) {
        const std::string w = at_key(where, "sigma") + "[\"" + key + "\"]";
        std::size_t i = 0, k = 0;
        char comma = 0;
        std::istringstream in(key);
        if (!(in >> i >> comma >> k) || comma != ',' || !in.eof() || i == 0 || k == 0 || i > k || k > spaces.size())
            throw InputError(w + ": key must be \"i,j\" with 1 <= i <= j <= " + std::to_string(spaces.size()));
        const Space& a = spaces[i - 1];
        const Space& b = spaces[k - 1];
        SparseMatrix m = matrix_from_json(f, value, a.dim * b.dim, a.dim * b.dim, w, diag);
        maps.emplace(BraidedSystem::Key{i - 1, k - 1}, LinMap({a, b}, {b, a}, std::move(m)));
    }
    try {
        return BraidedSystem(std::move(spaces), std::move(maps));
    } catch (const std::exception& e) {
        throw InputError(where + ": " + e.what());
    }
}

BraidedSystem load_system(const std::filesystem::path& path, Diagnostics& diag) {
    return system_from_json(read_json(path), file_where(path), diag);
}

std::vector<LinMap> maps_from_json(const json& j, const BraidedSystem& from, const BraidedSystem& to,
                                   const std::string& where, Diagnostics& diag) {
    const Field f = field_of_file(j, where);
    if (!(f == from.field()) || !(f == to.field()))
        throw InputError(where + ": field mismatch between the maps and the systems");
    if (from.rank() != to.rank())
        throw InputError(where + ": the systems have ranks " + std::to_string(from.rank()) + " and " +
                         std::to_string(to.rank()));
    const json& list = need(j, "maps", where);
    need_array(list, from.rank(), at_key(where, "maps"));
    std::vector<LinMap> out;
    for (std::size_t i = 0; i < from.rank(); ++i) {
        const Space& a = from.component(i);
        const Space& b = to.component(i);
        out.emplace_back(Factors{a}, Factors{b}, matrix_from_json(f, list[i], b.dim, a.dim, at_index(at_key(where, "maps"), i), diag));
    }
    return out;
}

json maps_to_json(const Field& f, std::span<const LinMap> maps) {
    json list = json::array();
    for (const auto& m : maps) list.push_back(matrix_to_json(m.matrix()));
    return json{{"field", field_to_json(f)}, {"maps", list}};
}

MonoidTable monoid_from_json(const json& j, const std::string& where) {
    const json& el = need(j, "elements", where);
    if (!el.is_array() || el.empty()) throw InputError(at_key(where, "elements") + ": expected a non-empty array");
    MonoidTable t;
    for (std::size_t i = 0; i < el.size(); ++i) {
        if (!el[i].is_string()) throw InputError(at_index(at_key(where, "elements"), i) + ": expected a string");
        t.names.push_back(el[i].get<std::string>());
    }
    const std::size_t n = t.names.size();
    const json& tab = need(j, "table", where);
    need_array(tab, n, at_key(where, "table"));
    for (std::size_t a = 0; a < n; ++a) {
        const std::string w = at_index(at_key(where, "table"), a);
        need_array(tab[a], n, w);
        t.product.emplace_back();
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t v = need_size(tab[a][b], at_index(w, b));
            if (v >= n) throw InputError(at_index(w, b) + ": element index out of range");
            t.product.back().push_back(v);
        }
    }
    try {
        validate_monoid(t);
    } catch (const std::invalid_argument& e) {
        throw InputError(where + ": " + e.what());
    }
    return t;
}

json monoid_to_json(const MonoidTable& t) { return json{{"elements", t.names}, {"table", t.product}}; }

json homology_report_to_json(const HomologyReport& r, const Field& f, int line) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"degree", row.degree},
                            {"chain_dim", row.chain_dim},
                            {"rank_d", row.rank_d},
                            {"rank_d_prime", row.rank_d_prime},
                            {"rank", row.rank},
                            {"homology_dim", row.homology_dim}});
    const char* which = r.which == Differential::D ? "d" : r.which == Differential::DPrime ? "d_prime" : "total";
    return json{{"field", field_to_json(f)},
                {"truncation", r.truncation},
                {"line", line},
                {"differential", which},
                {"cohomology", r.cohomology},
                {"degrees", rows},
                {"d_squared", r.d_squared},
                {"d_prime_squared", r.d_prime_squared},
                {"anticommute", r.anticommute},
                {"euler", json{{"chains", r.euler_chains}, {"homology", r.euler_homology}, {"holds", r.euler_holds()}}}};
}

json axiom_report_to_json(const AxiomReport& r) {
    json list = json::array();
    for (const auto& a : r.results()) {
        json e{{"name", a.name}, {"holds", a.holds}};
        if (!a.note.empty()) e["note"] = a.note;
        if (a.witness)
            e["witness"] = json{{"input", a.witness->input},
                                {"output", a.witness->output},
                                {"lhs", a.witness->lhs_value},
                                {"rhs", a.witness->rhs_value}};
        list.push_back(std::move(e));
    }
    return json{{"ok", r.ok()}, {"axioms", list}};
}

BialgebraRef require_same_base(const BialgebraRef& expected, const BialgebraRef& module_base, const std::string& what) {
    if (!(expected->field() == module_base->field()))
        throw InputError(what + ": field mismatch, " + module_base->field().name() + " vs " + expected->field().name());
    if (!(*expected == *module_base)) throw InputError(what + ": refers to a different bialgebra");
    return expected;
}

}  // namespace hopfbraid::io
