#include "fogus/io.hpp"

#include "fogus/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fogus {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const JsonSource& src, const std::string& what) { throw ParseError(src.context(), what); }

const Json& require(const Json& j, const char* key, const JsonSource& src) {
    if (!j.is_object()) fail(src, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(src, std::string("missing field \"") + key + "\"");
    return *it;
}

const Json* optional_field(const Json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

long integer(const Json& j, const JsonSource& src) {
    if (!j.is_number_integer()) fail(src, "expected an integer");
    return j.get<long>();
}

const Json& array(const Json& j, const JsonSource& src) {
    if (!j.is_array()) fail(src, "expected a list");
    return j;
}

Place place_from(const Json& j, const JsonSource& src) {
    const long p = integer(j, src);
    if (!is_prime(p)) fail(src, std::to_string(p) + " is not a prime");
    return Place(p);
}

// Library errors raised while assembling a value get the value's location.
template <class F>
auto located(const JsonSource& src, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const WeightViolation& e) {
        throw WeightViolation(src.context() + ": " + e.what());
    } catch (const Error& e) {
        fail(src, e.what());
    }
}

}  // namespace

// ---------------------------------------------------------------------------

Json parse_json(const std::string& text, const std::string& context) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::string what = e.what();
        const auto pos = what.find("parse error");
        throw ParseError(context, pos == std::string::npos ? what : what.substr(pos));
    }
}

Json read_json_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError(file.string(), "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_json(os.str(), file.string());
}

namespace {

// Lists of scalars stay on one line, so matrices print one row per line.
void pretty(std::string& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    if (j.is_array() && !j.empty() && std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + j[k].dump();
        out += "]";
        return;
    }
    if (j.is_array() && !j.empty()) {
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            out += pad;
            pretty(out, j[k], indent + 2);
            out += k + 1 < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
    } else if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t k = 0;
        for (const auto& [key, value] : j.items()) {
            out += pad + Json(key).dump() + ": ";
            pretty(out, value, indent + 2);
            out += ++k < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
    } else {
        out += j.dump();
    }
}

}  // namespace

std::string dump(const Json& j) {
    std::string out;
    pretty(out, j, 0);
    return out + "\n";
}

void write_json_file(const fs::path& file, const Json& j) {
    std::ofstream out(file);
    if (!out) throw Error("cannot write " + file.string());
    out << dump(j);
}

Json resolve_reference(const Json& j, JsonSource& src) {
    if (!j.is_string()) return j;
    fs::path p = j.get<std::string>();
    if (p.is_relative()) p = src.dir / p;
    Json loaded;
    try {
        loaded = read_json_file(p);
    } catch (const ParseError& e) {
        fail(src, e.what());
    }
    src = {p.parent_path(), p.string(), ""};
    return loaded;
}

// ---------------------------------------------------------------------------

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const Matrix& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Rational rational_from_json(const Json& j, const JsonSource& src) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(src, "expected a rational such as \"3/4\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(src, e.what());
    }
}

Matrix matrix_from_json(const Json& j, const JsonSource& src, std::optional<std::size_t> rows,
                        std::optional<std::size_t> cols) {
    array(j, src);
    if (j.empty()) {
        if (rows && *rows != 0) fail(src, "expected " + std::to_string(*rows) + " rows, got 0");
        return Matrix(0, cols.value_or(0));
    }
    if (rows && j.size() != *rows)
        fail(src, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(j.size()));
    const JsonSource first = src.index(0);
    const std::size_t width = array(j[0], first).size();
    if (cols && width != *cols) fail(first, "expected " + std::to_string(*cols) + " columns, got " + std::to_string(width));
    Matrix a(j.size(), width);
    for (std::size_t r = 0; r < j.size(); ++r) {
        const JsonSource row = src.index(r);
        if (array(j[r], row).size() != width) fail(row, "ragged row");
        for (std::size_t c = 0; c < width; ++c) a(r, c) = rational_from_json(j[r][c], row.index(c));
    }
    return a;
}

// ---------------------------------------------------------------------------

WeightFiltration ObjectFile::filtration() const { return weights ? *weights : tail_weight_filtration(base.tail()); }

FOgObject ObjectFile::realize(std::optional<FilterMode> mode) const {
    return make_fog(base, filtration(), mode.value_or(fog_prime ? FilterMode::fog_prime : FilterMode::strict));
}

ObjectFile object_file_from_json(const Json& j, const JsonSource& src) {
    const JsonSource dsrc = src.field("dim");
    const long dim = integer(require(j, "dim", src), dsrc);
    if (dim < 0) fail(dsrc, "negative dimension");

    OgusData data;
    data.dim = static_cast<std::size_t>(dim);
    const JsonSource tsrc = src.field("tail");
    const Json& tail = array(require(j, "tail", src), tsrc);
    for (std::size_t i = 0; i < tail.size(); ++i) data.tail.push_back(static_cast<int>(integer(tail[i], tsrc.index(i))));
    if (data.tail.size() != data.dim)
        fail(tsrc, "has " + std::to_string(data.tail.size()) + " entries for dim " + std::to_string(dim));

    if (const Json* exc = optional_field(j, "exceptional")) {
        const JsonSource esrc = src.field("exceptional");
        array(*exc, esrc);
        for (std::size_t k = 0; k < exc->size(); ++k) {
            const JsonSource e = esrc.index(k);
            const Json& entry = (*exc)[k];
            LocalFrobenius lf;
            lf.place = place_from(require(entry, "p", e), e.field("p"));
            lf.frobenius = matrix_from_json(require(entry, "frobenius", e), e.field("frobenius"), data.dim, data.dim);
            if (const Json* eps = optional_field(entry, "epsilon"))
                lf.epsilon = matrix_from_json(*eps, e.field("epsilon"), data.dim, data.dim);
            data.exceptional.push_back(std::move(lf));
        }
    }

    ObjectFile out;
    out.base = located(src, [&] { return validate(data); });
    if (const Json* fp = optional_field(j, "fog_prime")) {
        if (!fp->is_boolean()) fail(src.field("fog_prime"), "expected true or false");
        out.fog_prime = fp->get<bool>();
    }
    if (const Json* w = optional_field(j, "weights")) {
        const JsonSource wsrc = src.field("weights");
        array(*w, wsrc);
        std::map<int, Subspace> steps;
        std::optional<int> last;
        for (std::size_t k = 0; k < w->size(); ++k) {
            const JsonSource s = wsrc.index(k);
            const int index = static_cast<int>(integer(require((*w)[k], "index", s), s.field("index")));
            if (last && index <= *last) fail(s.field("index"), "indices must increase");
            last = index;
            const Matrix rows = matrix_from_json(require((*w)[k], "basis", s), s.field("basis"), std::nullopt, data.dim);
            steps.emplace(index, Subspace::span(rows.transpose()));
        }
        out.weights = located(wsrc, [&] { return WeightFiltration(data.dim, steps); });
    }
    return out;
}

ObjectFile load_object_file(const fs::path& file) {
    return object_file_from_json(read_json_file(file), {file.parent_path(), file.string(), ""});
}

FOgObject object_from_json(const Json& j, const JsonSource& src) {
    JsonSource s = src;
    const Json resolved = resolve_reference(j, s);
    const ObjectFile f = object_file_from_json(resolved, s);
    return located(s, [&] { return f.realize(); });
}

FOgObject load_object(const fs::path& file) {
    return object_from_json(read_json_file(file), {file.parent_path(), file.string(), ""});
}

Json to_json(const OgusObject& x) {
    Json j;
    j["dim"] = x.dim();
    j["tail"] = x.tail();
    Json exc = Json::array();
    for (const auto& [v, phi] : x.exceptional()) {
        Json e;
        e["p"] = v.p;
        e["frobenius"] = to_json(phi);
        exc.push_back(std::move(e));
    }
    j["exceptional"] = std::move(exc);
    return j;
}

Json to_json(const FOgObject& x) {
    Json j = to_json(x.base());
    Json w = Json::array();
    for (const auto& [i, s] : x.weights().steps()) {
        Json step;
        step["index"] = i;
        step["basis"] = to_json(s.basis().transpose());
        w.push_back(std::move(step));
    }
    j["weights"] = std::move(w);
    if (x.mode() == FilterMode::fog_prime) j["fog_prime"] = true;
    return j;
}

// ---------------------------------------------------------------------------

FOgMorphism morphism_from_json(const Json& j, const JsonSource& src) {
    const FOgObject s = object_from_json(require(j, "source", src), src.field("source"));
    const FOgObject t = object_from_json(require(j, "target", src), src.field("target"));
    const Matrix f = matrix_from_json(require(j, "f_dR", src), src.field("f_dR"), t.dim(), s.dim());
    return located(src, [&] { return FOgMorphism(s, t, f); });
}

Json to_json(const FOgMorphism& f) {
    Json j;
    j["source"] = to_json(f.source());
    j["target"] = to_json(f.target());
    j["f_dR"] = to_json(f.matrix());
    return j;
}

Cocycle cocycle_from_json(const Json& j, const FOgObject& m, const FOgObject& n, const JsonSource& src,
                          ExtLevel level) {
    const Matrix g = matrix_from_json(require(j, "tail_gen", src), src.field("tail_gen"), n.dim(), m.dim());
    std::map<Place, Matrix> exc;
    if (const Json* e = optional_field(j, "exceptional")) {
        const JsonSource esrc = src.field("exceptional");
        array(*e, esrc);
        for (std::size_t k = 0; k < e->size(); ++k) {
            const JsonSource s = esrc.index(k);
            const Place v = place_from(require((*e)[k], "p", s), s.field("p"));
            if (exc.count(v)) fail(s.field("p"), "duplicate place " + std::to_string(v.p));
            exc.emplace(v, matrix_from_json(require((*e)[k], "value", s), s.field("value"), n.dim(), m.dim()));
        }
    }
    return located(src, [&] { return Cocycle(m, n, g, exc, level); });
}

Json to_json(const Cocycle& x) {
    Json j;
    j["tail_gen"] = to_json(x.tail_gen());
    Json exc = Json::array();
    for (const auto& [v, value] : x.exceptional()) {
        Json e;
        e["p"] = v.p;
        e["value"] = to_json(value);
        exc.push_back(std::move(e));
    }
    j["exceptional"] = std::move(exc);
    return j;
}

ExtensionTriple extension_from_json(const Json& j, const JsonSource& src) {
    const FOgObject e = object_from_json(j, src);
    const JsonSource isrc = src.field("incl"), psrc = src.field("proj");
    const Json& incl = require(j, "incl", src);
    const Json& proj = require(j, "proj", src);
    const FOgObject n = object_from_json(require(incl, "source", isrc), isrc.field("source"));
    const FOgObject m = object_from_json(require(proj, "target", psrc), psrc.field("target"));
    const Matrix i = matrix_from_json(require(incl, "f_dR", isrc), isrc.field("f_dR"), e.dim(), n.dim());
    const Matrix p = matrix_from_json(require(proj, "f_dR", psrc), psrc.field("f_dR"), m.dim(), e.dim());
    Matrix gauge = Matrix::identity(e.dim());
    if (const Json* g = optional_field(j, "gauge")) gauge = matrix_from_json(*g, src.field("gauge"), e.dim(), e.dim());
    ExtensionTriple t{e, located(isrc, [&] { return FOgMorphism(n, e, i); }),
                      located(psrc, [&] { return FOgMorphism(e, m, p); }), gauge};
    if (!is_exact(t)) fail(src, "incl and proj do not form a short exact sequence");
    return t;
}

Json to_json(const ExtensionTriple& e) {
    Json j = to_json(e.object);
    Json incl, proj;
    incl["source"] = to_json(e.incl.source());
    incl["f_dR"] = to_json(e.incl.matrix());
    proj["target"] = to_json(e.proj.target());
    proj["f_dR"] = to_json(e.proj.matrix());
    j["incl"] = std::move(incl);
    j["proj"] = std::move(proj);
    j["gauge"] = to_json(e.gauge);
    return j;
}

FOgComplex complex_from_json(const Json& j, const JsonSource& src) {
    const JsonSource tsrc = src.field("terms");
    const Json& terms = array(require(j, "terms", src), tsrc);
    std::map<int, FOgObject> objects;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const JsonSource s = tsrc.index(k);
        const int deg = static_cast<int>(integer(require(terms[k], "degree", s), s.field("degree")));
        if (objects.count(deg)) fail(s.field("degree"), "duplicate degree " + std::to_string(deg));
        objects.emplace(deg, object_from_json(require(terms[k], "object", s), s.field("object")));
    }
    std::map<int, Matrix> d;
    if (const Json* ds = optional_field(j, "differentials")) {
        const JsonSource dsrc = src.field("differentials");
        array(*ds, dsrc);
        for (std::size_t k = 0; k < ds->size(); ++k) {
            const JsonSource s = dsrc.index(k);
            const int deg = static_cast<int>(integer(require((*ds)[k], "degree", s), s.field("degree")));
            if (d.count(deg)) fail(s.field("degree"), "duplicate degree " + std::to_string(deg));
            auto dim_of = [&](int i) { auto it = objects.find(i); return it == objects.end() ? std::size_t{0} : it->second.dim(); };
            d.emplace(deg, matrix_from_json(require((*ds)[k], "f_dR", s), s.field("f_dR"), dim_of(deg + 1), dim_of(deg)));
        }
    }
    return located(src, [&] { return FOgComplex(objects, d); });
}

Json to_json(const FOgComplex& c) {
    Json j;
    Json terms = Json::array(), ds = Json::array();
    for (const auto& [k, x] : c.terms()) {
        Json t;
        t["degree"] = k;
        t["object"] = to_json(x);
        terms.push_back(std::move(t));
    }
    for (int k = c.min_degree(); k < c.max_degree(); ++k) {
        const Matrix dk = c.d(k);
        if (dk.is_zero()) continue;
        Json t;
        t["degree"] = k;
        t["f_dR"] = to_json(dk);
        ds.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    j["differentials"] = std::move(ds);
    return j;
}

ProbeFamilyFile probe_family_from_json(const Json& j, const JsonSource& src) {
    ProbeFamilyFile out;
    const JsonSource psrc = src.field("probe");
    const Json& probe = array(require(j, "probe", src), psrc);
    for (std::size_t k = 0; k < probe.size(); ++k) out.probe.insert(place_from(probe[k], psrc.index(k)));
    if (const Json* cs = optional_field(j, "components")) {
        const JsonSource csrc = src.field("components");
        array(*cs, csrc);
        for (std::size_t k = 0; k < cs->size(); ++k) {
            const JsonSource s = csrc.index(k);
            const int deg = static_cast<int>(integer(require((*cs)[k], "degree", s), s.field("degree")));
            const Place v = place_from(require((*cs)[k], "p", s), s.field("p"));
            if (!out.probe.count(v)) fail(s.field("p"), std::to_string(v.p) + " is not in the probe");
            auto& slot = out.family[deg];
            if (slot.count(v)) fail(s, "duplicate component");
            slot.emplace(v, matrix_from_json(require((*cs)[k], "value", s), s.field("value")));
        }
    }
    return out;
}

Json to_json(const ProbeFamilyFile& b) {
    Json j;
    Json probe = Json::array();
    for (const auto& v : b.probe) probe.push_back(v.p);
    j["probe"] = std::move(probe);
    Json cs = Json::array();
    for (const auto& [deg, perplace] : b.family)
        for (const auto& [v, value] : perplace) {
            Json c;
            c["degree"] = deg;
            c["p"] = v.p;
            c["value"] = to_json(value);
            cs.push_back(std::move(c));
        }
    j["components"] = std::move(cs);
    return j;
}

}  // namespace fogus
