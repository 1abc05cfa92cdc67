#include <json.hpp>

#include "alignmatch/instance.hpp"
#include "json_support.hpp"

namespace alignmatch {

namespace {

std::int64_t require_int(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end())
    throw SyntaxError(std::string("missing field \"") + key + "\"", 0, 0);
  if (!it->is_number_integer())
    throw SyntaxError(std::string("field \"") + key + "\" must be an integer",
                      0, 0);
  return it->get<std::int64_t>();
}

const nlohmann::json& require_array(const nlohmann::json& doc,
                                    const char* key) {
  auto it = doc.find(key);
  if (it == doc.end())
    throw SyntaxError(std::string("missing field \"") + key + "\"", 0, 0);
  if (!it->is_array())
    throw SyntaxError(std::string("field \"") + key + "\" must be an array", 0,
                      0);
  return *it;
}

}  // namespace

Instance parse_instance(std::string_view text, Strictness strictness) {
  nlohmann::json doc = detail::parse_json(text);
  if (!doc.is_object())
    throw SyntaxError("instance file must hold a JSON object", 1, 1);

  std::int64_t n_students = require_int(doc, "n_students");
  std::int64_t n_schools = require_int(doc, "n_schools");
  if (n_students < 0 || n_schools < 0)
    throw Error(ErrorCode::DimensionMismatch, "negative dimension");

  std::vector<std::int64_t> capacities;
  for (const auto& q : require_array(doc, "capacities")) {
    if (!q.is_number_integer())
      throw SyntaxError("capacities must be integers", 0, 0);
    capacities.push_back(q.get<std::int64_t>());
  }

  std::vector<std::vector<double>> rows;
  for (const auto& row : require_array(doc, "utilities")) {
    if (!row.is_array())
      throw SyntaxError("each utilities row must be an array", 0, 0);
    auto& out = rows.emplace_back();
    for (const auto& u : row) {
      if (!u.is_number())
        throw SyntaxError("utilities must be numbers", 0, 0);
      out.push_back(u.get<double>());
    }
  }
  return build_instance(static_cast<std::size_t>(n_students),
                        static_cast<std::size_t>(n_schools),
                        std::move(capacities), rows, strictness);
}

std::string serialize_instance(const Instance& instance) {
  std::string out = "{\n";
  out += "  \"n_students\": " + std::to_string(instance.n_students()) + ",\n";
  out += "  \"n_schools\": " + std::to_string(instance.n_schools()) + ",\n";
  out += "  \"capacities\": [";
  for (std::size_t j = 0; j < instance.n_schools(); ++j) {
    if (j) out += ", ";
    out += std::to_string(instance.capacities()[j]);
  }
  out += "],\n  \"utilities\": [\n";
  for (std::size_t i = 0; i < instance.n_students(); ++i) {
    out += "    [";
    auto row = instance.row(StudentId{i});
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ", ";
      out += format_double(row[j]);
    }
    out += i + 1 < instance.n_students() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace alignmatch
