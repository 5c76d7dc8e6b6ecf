#include "rigidity/io.hpp"

#include <fstream>
#include <sstream>

#include "rigidity/error.hpp"

namespace rigidity {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  fail(ErrorKind::parse, (where.empty() ? std::string("/") : where) + ": " + what);
}

void expect_type(const Json& doc, const char* type) {
  if (!doc.is_object()) schema("", "expected an object");
  const Json& t = require_field(doc, "type", "");
  if (!t.is_string() || t.get<std::string>() != type)
    schema("/type", std::string("expected \"") + type + "\"");
}

const Json& require_array(const Json& obj, const std::string& key, const std::string& where) {
  const Json& a = require_field(obj, key, where);
  if (!a.is_array()) schema(where + "/" + key, "expected an array");
  return a;
}

std::vector<std::size_t> uint_list(const Json& obj, const std::string& key, const std::string& where) {
  const Json& a = require_array(obj, key, where);
  std::vector<std::size_t> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(json_uint(a[i], where + "/" + key + "/" + std::to_string(i)));
  return out;
}

Json uint_array(const std::vector<std::size_t>& values) {
  Json a = Json::array();
  for (auto v : values) a.push_back(v);
  return a;
}

}  // namespace

const Json& require_field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema(where, "missing field \"" + key + "\"");
  return *it;
}

std::uint64_t json_uint(const Json& value, const std::string& where) {
  if (!value.is_number_unsigned()) {
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) return value.get<std::uint64_t>();
    schema(where, "expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

Rational json_rational(const Json& value, const std::string& where) {
  if (value.is_number_integer()) {
    Rational r;
    if (value.is_number_unsigned()) r = Rational(std::to_string(value.get<std::uint64_t>()));
    else r = Rational(std::to_string(value.get<std::int64_t>()));
    return r;
  }
  if (!value.is_string()) schema(where, "expected a rational string such as \"7/3\"");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const Error& e) {
    schema(where, e.what());
  }
}

Json to_json(const Multigraph& g) {
  Json doc;
  doc["type"] = "multigraph";
  doc["n"] = g.vertex_count();
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v}));
  doc["edges"] = std::move(edges);
  if (!g.labels().empty()) {
    Json labels = Json::object();
    for (const auto& [v, name] : g.labels()) labels[std::to_string(v)] = name;
    doc["labels"] = std::move(labels);
  }
  return doc;
}

Multigraph multigraph_from_json(const Json& doc) {
  expect_type(doc, "multigraph");
  const std::size_t n = json_uint(require_field(doc, "n", ""), "/n");
  const Json& edges = require_array(doc, "edges", "");
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string at = "/edges/" + std::to_string(i);
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 2) schema(at, "expected [u, v]");
    const Vertex u = json_uint(e[0], at + "/0");
    const Vertex v = json_uint(e[1], at + "/1");
    if (u >= n || v >= n) schema(at, "endpoint out of range (n = " + std::to_string(n) + ")");
    list.push_back({u, v});
  }
  std::map<Vertex, std::string> labels;
  if (const auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_object()) schema("/labels", "expected an object");
    for (const auto& [key, value] : it->items()) {
      const std::string at = "/labels/" + key;
      if (!value.is_string()) schema(at, "expected a string");
      std::size_t used = 0;
      unsigned long long id = 0;
      try {
        id = std::stoull(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || key.empty()) schema(at, "label key must be a vertex id");
      if (id >= n) schema(at, "label for unknown vertex");
      labels[static_cast<Vertex>(id)] = value.get<std::string>();
    }
  }
  return Multigraph(n, std::move(list), std::move(labels));
}

Json to_json(const LineEmbedding& emb) {
  Json doc;
  doc["type"] = "embedding";
  Json pos = Json::array();
  for (const auto& p : emb.positions()) pos.push_back(format_rational(p));
  doc["positions"] = std::move(pos);
  return doc;
}

LineEmbedding embedding_from_json(const Json& doc) {
  expect_type(doc, "embedding");
  const Json& pos = require_array(doc, "positions", "");
  std::vector<Rational> values;
  values.reserve(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) values.push_back(json_rational(pos[i], "/positions/" + std::to_string(i)));
  return LineEmbedding(std::move(values));  // validation error on repeats
}

Json to_json(const ModelLSample& s) {
  Json doc;
  doc["type"] = "model_L";
  doc["kernel_law"] = to_string(s.kernel_law);
  doc["empty"] = s.empty;
  Json deg;
  deg["capital_lambda"] = s.degseq.capital_lambda;
  deg["attempts"] = s.degseq.attempts;
  deg["raw"] = uint_array(s.degseq.raw);
  deg["degrees"] = uint_array(s.degseq.degrees);
  doc["degree_sequence"] = std::move(deg);
  Json kernel = to_json(s.kernel);
  doc["kernel"] = std::move(kernel);
  doc["path_lengths"] = uint_array(s.path_lengths);
  return doc;
}

ModelLSample model_L_from_json(const Json& doc) {
  expect_type(doc, "model_L");
  ModelLSample s;
  const Json& law = require_field(doc, "kernel_law", "");
  if (law == "pairing") s.kernel_law = KernelLaw::pairing;
  else if (law == "uniform") s.kernel_law = KernelLaw::uniform;
  else schema("/kernel_law", "expected \"pairing\" or \"uniform\"");
  const Json& empty = require_field(doc, "empty", "");
  if (!empty.is_boolean()) schema("/empty", "expected a boolean");
  s.empty = empty.get<bool>();
  const Json& deg = require_field(doc, "degree_sequence", "");
  const Json& cl = require_field(deg, "capital_lambda", "/degree_sequence");
  if (!cl.is_number()) schema("/degree_sequence/capital_lambda", "expected a number");
  s.degseq.capital_lambda = cl.get<double>();
  s.degseq.attempts = json_uint(require_field(deg, "attempts", "/degree_sequence"), "/degree_sequence/attempts");
  s.degseq.raw = uint_list(deg, "raw", "/degree_sequence");
  s.degseq.degrees = uint_list(deg, "degrees", "/degree_sequence");
  if (s.degseq.raw.size() != s.degseq.degrees.size())
    schema("/degree_sequence/degrees", "length differs from raw");
  for (std::size_t i = 0; i < s.degseq.degrees.size(); ++i) {
    const std::size_t d = s.degseq.degrees[i];
    const std::size_t r = s.degseq.raw[i];
    if (d != (r >= 3 ? r : 0)) schema("/degree_sequence/degrees/" + std::to_string(i), "inconsistent with raw");
    if (d > 0) {
      ++s.degseq.kernel_vertex_count;
      ++s.degseq.counts_by_degree[d];
    }
  }
  try {
    s.kernel = multigraph_from_json(require_field(doc, "kernel", ""));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::parse) throw;
    fail(ErrorKind::parse, std::string("/kernel") + e.what());
  }
  s.path_lengths = uint_list(doc, "path_lengths", "");
  if (s.path_lengths.size() != s.kernel.edge_count()) schema("/path_lengths", "one length per kernel edge required");
  for (std::size_t i = 0; i < s.path_lengths.size(); ++i)
    if (s.path_lengths[i] == 0) schema("/path_lengths/" + std::to_string(i), "length must be >= 1");
  if (s.kernel.vertex_count() != s.degseq.kernel_vertex_count)
    schema("/kernel/n", "differs from the number of kernel degrees");
  if (!s.empty) {
    s.decomposition = assemble_core(s.kernel, s.path_lengths);
    s.core = s.decomposition.core;
  }
  return s;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, path.string() + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::parse, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::resource, path.string() + ": cannot write");
  out << doc.dump(2) << '\n';
}

}  // namespace rigidity
