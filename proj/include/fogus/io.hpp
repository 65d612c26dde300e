#pragma once

// JSON file formats.  Rationals are strings "a/b" or "a"; matrices are
// lists of rows.  Fields naming an object or complex accept either an
// inline value or a path, resolved against the directory of the file that
// mentions it.
//
// Malformed input raises ParseError with the file and field where it was
// found.  A well-formed object that breaks the purity rules of the filtered
// category raises WeightViolation instead, with the same kind of context.

#include "fogus/complexes.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace fogus {

using Json = nlohmann::ordered_json;

/// Where a JSON value came from: a directory for relative paths, the file
/// name and the field path ("terms[1].object").
struct JsonSource {
    std::filesystem::path dir;
    std::string file;
    std::string path;

    std::string context() const { return path.empty() ? file : file + ": " + path; }
    JsonSource field(const std::string& name) const { return {dir, file, path.empty() ? name : path + "." + name}; }
    JsonSource index(std::size_t i) const { return {dir, file, path + "[" + std::to_string(i) + "]"}; }
};

Json read_json_file(const std::filesystem::path& file);
Json parse_json(const std::string& text, const std::string& context = "<input>");
/// Two-space indented, trailing newline.
std::string dump(const Json& j);
void write_json_file(const std::filesystem::path& file, const Json& j);

Json to_json(const Rational& r);
Json to_json(const Matrix& a);
Rational rational_from_json(const Json& j, const JsonSource& src);
/// Expected shape is checked when given; [] with a known shape is the zero matrix.
Matrix matrix_from_json(const Json& j, const JsonSource& src, std::optional<std::size_t> rows = {},
                        std::optional<std::size_t> cols = {});

/// The parsed content of an object file before the filtered-category checks.
struct ObjectFile {
    OgusObject base;
    std::optional<WeightFiltration> weights;
    bool fog_prime = false;

    WeightFiltration filtration() const;
    /// make_fog with the file's mode, or with `mode` if given.
    FOgObject realize(std::optional<FilterMode> mode = {}) const;
};

ObjectFile object_file_from_json(const Json& j, const JsonSource& src);
ObjectFile load_object_file(const std::filesystem::path& file);
FOgObject object_from_json(const Json& j, const JsonSource& src);
FOgObject load_object(const std::filesystem::path& file);
Json to_json(const OgusObject& x);
Json to_json(const FOgObject& x);

/// {"source", "target", "f_dR"}.
FOgMorphism morphism_from_json(const Json& j, const JsonSource& src);
Json to_json(const FOgMorphism& f);

/// {"tail_gen", "exceptional": [{"p", "value"}]} for the given M, N.
Cocycle cocycle_from_json(const Json& j, const FOgObject& m, const FOgObject& n, const JsonSource& src,
                          ExtLevel level = ExtLevel::fog);
Json to_json(const Cocycle& x);

/// Object file of E plus "incl" (with "source": N) and "proj" (with
/// "target": M); the E side of both maps is the file's object.
ExtensionTriple extension_from_json(const Json& j, const JsonSource& src);
Json to_json(const ExtensionTriple& e);

FOgComplex complex_from_json(const Json& j, const JsonSource& src);
Json to_json(const FOgComplex& c);

/// {"probe": [p, ...], "components": [{"degree", "p", "value"}]}.
struct ProbeFamilyFile {
    std::set<Place> probe;
    ProbeFamily family;
};
ProbeFamilyFile probe_family_from_json(const Json& j, const JsonSource& src);
Json to_json(const ProbeFamilyFile& b);

/// Loads the value of a field that may hold a path instead of inline JSON.
Json resolve_reference(const Json& j, JsonSource& src);

}  // namespace fogus
