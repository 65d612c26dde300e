#include "fogus/errors.hpp"
#include "fogus/io.hpp"
#include "fogus/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fogus;

namespace {

py::object fraction_type() { return py::module_::import("fractions").attr("Fraction"); }

py::object to_py(const Rational& r) { return fraction_type()(r.to_string()); }

Rational to_rational(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return Rational::parse(h.cast<std::string>());
    return Rational::parse(py::str(fraction_type()(h)).cast<std::string>());
}

py::list to_py(const Matrix& a) {
    py::list rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < a.cols(); ++j) row.append(to_py(a(i, j)));
        rows.append(row);
    }
    return rows;
}

Matrix to_matrix(const py::handle& h, std::size_t rows, std::size_t cols) {
    Matrix a(rows, cols);
    const auto outer = py::reinterpret_borrow<py::sequence>(h);
    if (outer.size() != rows) throw DimensionMismatch("expected " + std::to_string(rows) + " rows");
    for (std::size_t i = 0; i < rows; ++i) {
        const auto row = py::reinterpret_borrow<py::sequence>(outer[i]);
        if (row.size() != cols) throw DimensionMismatch("expected " + std::to_string(cols) + " columns");
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = to_rational(row[j]);
    }
    return a;
}

std::map<Place, Matrix> to_place_map(const py::dict& d, std::size_t rows, std::size_t cols) {
    std::map<Place, Matrix> out;
    for (const auto& [k, v] : d) out.emplace(Place(k.cast<long>()), to_matrix(v, rows, cols));
    return out;
}

std::set<Place> to_probe(const std::vector<long>& ps) {
    std::set<Place> out;
    for (long p : ps) out.insert(Place(p));
    return out;
}

const JsonSource inline_source{".", "<python>", ""};

py::dict suite_dict(const SuiteResult& r) {
    py::dict d;
    d["number"] = r.number;
    d["name"] = r.name;
    d["passed"] = r.passed;
    d["samples"] = r.samples;
    d["seconds"] = r.seconds;
    py::dict facts;
    for (const auto& [k, v] : r.facts) facts[py::str(k)] = v;
    d["facts"] = facts;
    d["failures"] = r.failures;
    return d;
}

}  // namespace

PYBIND11_MODULE(_fogus, m) {
    m.doc() = "Filtered Ogus structures over Q";

    static py::exception<Error> base(m, "FogusError", PyExc_ValueError);
    static py::exception<ParseError> parse(m, "ParseError", base.ptr());
    static py::exception<WeightViolation> weight(m, "WeightViolation", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::set_error(parse, e.what());
        } catch (const WeightViolation& e) {
            py::set_error(weight, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::class_<FOgObject>(m, "Object")
        .def_static("from_json", [](const std::string& text) { return object_from_json(parse_json(text), inline_source); })
        .def_static("load", [](const std::string& path) { return load_object(path); })
        .def("to_json", [](const FOgObject& x) { return dump(to_json(x)); })
        .def_property_readonly("dim", &FOgObject::dim)
        .def_property_readonly("tail", [](const FOgObject& x) { return x.base().tail(); })
        .def_property_readonly("fog_prime", [](const FOgObject& x) { return x.mode() == FilterMode::fog_prime; })
        .def_property_readonly("exceptional",
                               [](const FOgObject& x) {
                                   py::dict d;
                                   for (const auto& [v, phi] : x.base().exceptional()) d[py::int_(v.p)] = to_py(phi);
                                   return d;
                               })
        .def_property_readonly("weights",
                               [](const FOgObject& x) {
                                   py::dict d;
                                   for (const auto& [i, s] : x.weights().steps()) d[py::int_(i)] = to_py(s.basis().transpose());
                                   return d;
                               })
        .def("frobenius", [](const FOgObject& x, long p) { return to_py(x.base().frobenius_at(Place(p))); })
        .def("__eq__", [](const FOgObject& a, const FOgObject& b) { return a == b; })
        .def("__repr__", [](const FOgObject& x) { return "<Object dim " + std::to_string(x.dim()) + ">"; });

    m.def("tate", [](int n) { return tate_fog(n); }, py::arg("n"));
    m.def("twist", [](const FOgObject& x, int n) { return tate_twist(x, n); });
    m.def("direct_sum", [](const FOgObject& a, const FOgObject& b) { return direct_sum(a, b); });
    m.def("internal_hom", [](const FOgObject& a, const FOgObject& b) { return internal_hom(a, b); });
    m.def(
        "hom",
        [](const FOgObject& a, const FOgObject& b, const std::string& level) {
            py::list out;
            if (level == "og") {
                for (const auto& f : hom_space(a.base(), b.base())) out.append(to_py(f.matrix()));
            } else if (level == "fog" || level == "fog_prime") {
                const auto mode = level == "fog" ? std::optional<FilterMode>{} : FilterMode::fog_prime;
                const auto x = mode ? with_mode(a, *mode) : a, y = mode ? with_mode(b, *mode) : b;
                for (const auto& f : hom_space_fog(x, y)) out.append(to_py(f.matrix()));
            } else {
                throw py::value_error("level must be 'og', 'fog' or 'fog_prime'");
            }
            return out;
        },
        py::arg("m"), py::arg("n"), py::arg("level") = "fog");

    m.def(
        "is_pure",
        [](const std::vector<py::object>& coeffs, long q, int i, py::object tol) {
            std::vector<Rational> c;
            for (const auto& h : coeffs) c.push_back(to_rational(h));
            PurityOptions opts;
            if (!tol.is_none()) opts.tolerance = to_rational(tol);
            return to_string(is_pure(Polynomial(c), q, i, opts).verdict);
        },
        py::arg("coefficients"), py::arg("q"), py::arg("weight"), py::arg("tol") = py::none(),
        "Coefficients lowest degree first; returns 'pure', 'impure' or 'undecided'.");
    m.def("check_purity", [](const FOgObject& x) {
        py::list out;
        for (const auto& e : check_weight_filtration(x.base(), x.weights()).entries) {
            py::dict d;
            d["index"] = e.index;
            d["p"] = e.place ? py::object(py::int_(e.place->p)) : py::object(py::none());
            d["verdict"] = to_string(e.result.verdict);
            out.append(d);
        }
        return out;
    });

    py::class_<Cocycle>(m, "Cocycle")
        .def(py::init([](const FOgObject& a, const FOgObject& b, const py::object& g, const py::dict& exc) {
                 return Cocycle(a, b, to_matrix(g, b.dim(), a.dim()), to_place_map(exc, b.dim(), a.dim()));
             }),
             py::arg("m"), py::arg("n"), py::arg("tail_gen"), py::arg("exceptional") = py::dict())
        .def_property_readonly("tail_gen", [](const Cocycle& x) { return to_py(x.tail_gen()); })
        .def_property_readonly("exceptional",
                               [](const Cocycle& x) {
                                   py::dict d;
                                   for (const auto& [v, val] : x.exceptional()) d[py::int_(v.p)] = to_py(val);
                                   return d;
                               })
        .def("at", [](const Cocycle& x, long p) { return to_py(x.at(Place(p))); })
        .def("to_json", [](const Cocycle& x) { return dump(to_json(x)); })
        .def("__add__", [](const Cocycle& a, const Cocycle& b) { return a + b; })
        .def("__sub__", [](const Cocycle& a, const Cocycle& b) { return a - b; })
        .def("__rmul__", [](const Cocycle& x, const py::object& s) { return to_rational(s) * x; });

    m.def("xi", [](const FOgObject& a, const FOgObject& b, const py::object& g) {
        return xi(a, b, to_matrix(g, b.dim(), a.dim()));
    });
    m.def("delta", [](const FOgObject& a, const FOgObject& b, long p, const py::object& value) {
        return delta(a, b, Place(p), to_matrix(value, b.dim(), a.dim()));
    });
    m.def(
        "is_coboundary",
        [](const Cocycle& x, std::optional<std::vector<long>> probe) -> py::object {
            const auto s = probe ? ExtSetting::truncated(to_probe(*probe)) : ExtSetting::adelic();
            const auto h = is_coboundary(x, s);
            return h ? py::object(to_py(*h)) : py::object(py::none());
        },
        py::arg("x"), py::arg("probe") = py::none());
    m.def(
        "ext1_rank",
        [](const FOgObject& a, const FOgObject& b, const std::vector<Cocycle>& xs, std::optional<std::vector<long>> probe,
           bool og) {
            const ExtLevel level = og ? ExtLevel::og : ExtLevel::fog;
            return ext1_rank(a, b, xs, probe ? ExtSetting::truncated(to_probe(*probe), level) : ExtSetting::adelic(level));
        },
        py::arg("m"), py::arg("n"), py::arg("classes"), py::arg("probe") = py::none(), py::arg("og") = false);

    py::class_<ExtensionTriple>(m, "Extension")
        .def_static("from_json", [](const std::string& text) { return extension_from_json(parse_json(text), inline_source); })
        .def("to_json", [](const ExtensionTriple& e) { return dump(to_json(e)); })
        .def_property_readonly("object", [](const ExtensionTriple& e) { return e.object; })
        .def_property_readonly("incl", [](const ExtensionTriple& e) { return to_py(e.incl.matrix()); })
        .def_property_readonly("proj", [](const ExtensionTriple& e) { return to_py(e.proj.matrix()); })
        .def("is_exact", [](const ExtensionTriple& e) { return is_exact(e); });
    m.def("build_extension", [](const Cocycle& x) { return build_extension(x); });
    m.def("extract_class", [](const ExtensionTriple& e) { return extract_class(e); });
    m.def("baer_sum", [](const ExtensionTriple& a, const ExtensionTriple& b) { return baer_sum(a, b); });

    py::class_<FOgComplex>(m, "Complex")
        .def_static("from_json", [](const std::string& text) { return complex_from_json(parse_json(text), inline_source); })
        .def_static("concentrated", [](const FOgObject& x, int degree) { return FOgComplex::concentrated(x, degree); },
                    py::arg("object"), py::arg("degree") = 0)
        .def("to_json", [](const FOgComplex& c) { return dump(to_json(c)); })
        .def("shift", [](const FOgComplex& c, int n) { return shift(c, n); })
        .def("__eq__", [](const FOgComplex& a, const FOgComplex& b) { return a == b; });
    m.def(
        "ext_rank",
        [](const FOgComplex& a, const FOgComplex& b, int i, const std::vector<long>& probe, bool og) {
            return ext_groups(a, b, i, to_probe(probe), og ? ExtLevel::og : ExtLevel::fog).rank;
        },
        py::arg("m"), py::arg("n"), py::arg("degree"), py::arg("probe"), py::arg("og") = false);
    m.def(
        "kill_cocycle",
        [](const FOgComplex& a, const FOgComplex& b, const std::string& family_json) {
            const auto fam = probe_family_from_json(parse_json(family_json), inline_source);
            const auto r = check_lemma(a, b, fam.family, fam.probe);
            py::dict d;
            d["complex"] = r.killed.e;
            d["quasi_iso"] = r.quasi_iso;
            d["exact"] = r.exact;
            d["identity_hits_b"] = r.identity_hits_b;
            d["b_killed"] = r.b_killed;
            return d;
        },
        py::arg("m"), py::arg("n"), py::arg("b_json"));

    m.def("suite_names", [] {
        std::vector<std::string> out;
        for (const auto& s : suites()) out.emplace_back(s.name);
        return out;
    });
    m.def(
        "verify",
        [](const std::string& name, std::uint64_t seed, std::optional<std::size_t> trials) {
            const SuiteInfo* info;
            try {
                info = &suite_by_name(name);
            } catch (const std::out_of_range& e) {
                throw py::value_error(e.what());
            }
            SuiteResult r;
            {
                py::gil_scoped_release release;
                r = run_suite(info->number, {seed, trials});
            }
            return suite_dict(r);
        },
        py::arg("suite"), py::arg("seed") = default_seed, py::arg("trials") = py::none());
}
