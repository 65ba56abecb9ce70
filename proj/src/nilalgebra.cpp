#include "itv/nilalgebra.hpp"
#include "itv/form_literal.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace itv {

StructureTable<Rational> structure_table_from_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("structure table: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("d") || !doc["d"].is_object()) {
        throw ParseError("structure table must be an object with a \"d\" object");
    }
    StructureTable<Rational> table;
    for (const auto& [key, value] : doc["d"].items()) {
        if (key.size() != 2 || key[0] != 'e' || key[1] < '1' || key[1] > '6') {
            throw ParseError("structure table key '" + key + "' is not a generator e1..e6");
        }
        if (!value.is_string()) throw ParseError("structure table entry for " + key + " must be a form literal");
        auto form = parse_form<Rational>(value.get<std::string>());
        if (form.grade() != 2) throw ParseError("d(" + key + ") must be a 2-form");
        table.d_of_generator[static_cast<std::size_t>(key[1] - '1')] = std::move(form);
    }
    return table;
}

StructureTable<Rational> load_structure_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open structure table " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return structure_table_from_json(buffer.str());
}

} // namespace itv
