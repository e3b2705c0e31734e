#include "entcert/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace entcert::io {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr const char* kToolName = "entcert";
constexpr const char* kToolVersion = "0.1.0";

TensorSpace parse_dims(const json& j) {
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
    throw std::invalid_argument("file: missing dims array");
  std::vector<int> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<int>() < 1)
      throw std::invalid_argument("file: dims must be positive integers");
    dims.push_back(d.get<int>());
  }
  return TensorSpace(dims);
}

ArithmeticMode parse_mode(const json& j) {
  const std::string mode = j.value("mode", "");
  if (mode == "float") return ArithmeticMode::Float;
  if (mode == "rational") return ArithmeticMode::Rational;
  throw std::invalid_argument("file: mode must be \"float\" or \"rational\"");
}

void check_schema(const json& j) {
  if (!j.contains("schema") || !j["schema"].is_number_integer() ||
      j["schema"].get<int>() != kSchemaVersion)
    throw std::invalid_argument("file: unsupported schema version");
}

Complexd parse_float_entry(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw std::invalid_argument("file: float entries must be [re, im] numbers");
  return {e[0].get<double>(), e[1].get<double>()};
}

RationalComplex parse_rational_entry(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
    throw std::invalid_argument("file: rational entries must be [\"p/q\", \"p/q\"] strings");
  return {parse_rational(e[0].get<std::string>()), parse_rational(e[1].get<std::string>())};
}

template <class S, class EntryFn>
std::vector<std::vector<S>> parse_vector_list(const json& rows, std::size_t expected_len,
                                              EntryFn&& entry_fn, const char* what) {
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument(std::string("file: ") + what + " must be a nonempty array");
  std::vector<std::vector<S>> out;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != expected_len)
      throw std::invalid_argument(std::string("file: every ") + what +
                                  " row must have product(dims) entries");
    std::vector<S> v;
    v.reserve(expected_len);
    for (const auto& e : row) v.push_back(entry_fn(e));
    out.push_back(std::move(v));
  }
  return out;
}

json float_entry(const Complexd& c) { return json::array({c.real(), c.imag()}); }

json rational_entry(const RationalComplex& c) {
  return json::array({rational_to_string(c.re), rational_to_string(c.im)});
}

json target_to_json(const CertificateTarget& t) {
  json j;
  switch (t.kind) {
    case CertificateTarget::Kind::REntangled:
      j["kind"] = "r_entangled";
      j["value"] = t.value;
      break;
    case CertificateTarget::Kind::SchmidtNumberAtLeast:
      j["kind"] = "schmidt_number_at_least";
      j["value"] = t.value;
      break;
    case CertificateTarget::Kind::CompletelyEntangled:
      j["kind"] = "completely_entangled";
      j["value"] = 0;
      break;
    case CertificateTarget::Kind::GenuinelyEntangled:
      j["kind"] = "genuinely_entangled";
      j["value"] = 0;
      break;
  }
  return j;
}

CertificateTarget target_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int value = j.at("value").get<int>();
  if (kind == "r_entangled") return CertificateTarget::r_entangled(value);
  if (kind == "schmidt_number_at_least") return CertificateTarget::schmidt_number_at_least(value);
  if (kind == "completely_entangled") return CertificateTarget::completely_entangled();
  if (kind == "genuinely_entangled") return CertificateTarget::genuinely_entangled();
  throw std::invalid_argument("certificate: unknown target kind");
}

}  // namespace

AnySubspace parse_subspace_file(const std::string& text) {
  json j = json::parse(text);
  check_schema(j);
  const TensorSpace space = parse_dims(j);
  const ArithmeticMode mode = parse_mode(j);
  if (!j.contains("basis")) throw std::invalid_argument("file: missing basis");
  const auto len = static_cast<std::size_t>(space.total_dimension());
  if (mode == ArithmeticMode::Float)
    return Subspace<Complexd>(space,
                              parse_vector_list<Complexd>(j["basis"], len, parse_float_entry,
                                                          "basis"));
  return Subspace<RationalComplex>(
      space, parse_vector_list<RationalComplex>(j["basis"], len, parse_rational_entry, "basis"));
}

AnyMixedState parse_state_file(const std::string& text) {
  json j = json::parse(text);
  check_schema(j);
  const TensorSpace space = parse_dims(j);
  const ArithmeticMode mode = parse_mode(j);
  if (!j.contains("matrix")) throw std::invalid_argument("file: missing matrix");
  const auto len = static_cast<std::size_t>(space.total_dimension());
  if (j["matrix"].size() != len)
    throw std::invalid_argument("file: matrix must have product(dims) rows");
  if (mode == ArithmeticMode::Float) {
    MixedState<Complexd> m{space, parse_vector_list<Complexd>(j["matrix"], len, parse_float_entry,
                                                              "matrix")};
    validate_mixed_state(m);
    return m;
  }
  MixedState<RationalComplex> m{
      space, parse_vector_list<RationalComplex>(j["matrix"], len, parse_rational_entry, "matrix")};
  validate_mixed_state(m);
  return m;
}

std::string serialize_subspace_file(const Subspace<Complexd>& s) {
  json j;
  j["schema"] = kSchemaVersion;
  j["dims"] = s.space().dims();
  j["mode"] = "float";
  json basis = json::array();
  for (const auto& v : s.basis()) {
    json row = json::array();
    for (const auto& c : v) row.push_back(float_entry(c));
    basis.push_back(std::move(row));
  }
  j["basis"] = std::move(basis);
  return j.dump(2) + "\n";
}

std::string serialize_subspace_file(const Subspace<RationalComplex>& s) {
  json j;
  j["schema"] = kSchemaVersion;
  j["dims"] = s.space().dims();
  j["mode"] = "rational";
  json basis = json::array();
  for (const auto& v : s.basis()) {
    json row = json::array();
    for (const auto& c : v) row.push_back(rational_entry(c));
    basis.push_back(std::move(row));
  }
  j["basis"] = std::move(basis);
  return j.dump(2) + "\n";
}

namespace {

template <class S, class EntryFn>
std::string state_to_json(const MixedState<S>& m, const char* mode, EntryFn&& entry_fn) {
  json j;
  j["schema"] = kSchemaVersion;
  j["dims"] = m.space.dims();
  j["mode"] = mode;
  json matrix = json::array();
  for (const auto& row : m.rho) {
    json r = json::array();
    for (const auto& c : row) r.push_back(entry_fn(c));
    matrix.push_back(std::move(r));
  }
  j["matrix"] = std::move(matrix);
  return j.dump(2) + "\n";
}

}  // namespace

std::string serialize_state_file(const MixedState<Complexd>& m) {
  return state_to_json(m, "float", float_entry);
}

std::string serialize_state_file(const MixedState<RationalComplex>& m) {
  return state_to_json(m, "rational", rational_entry);
}

std::string serialize_certificate(const CertificateFile& file) {
  const Certificate& c = file.certificate;
  json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["target"] = target_to_json(c.target);
  j["verdict"] = to_string(c.verdict);
  j["level"] = c.level;
  j["level_cap"] = c.level_cap;
  j["mode"] = to_string(c.mode);
  j["requested_rel_tol"] = c.requested_rel_tol;
  json systems = json::array();
  for (const auto& rep : c.systems) {
    json r;
    r["label"] = rep.label;
    r["level"] = rep.level;
    r["rows"] = rep.rows;
    r["cols"] = rep.cols;
    r["size_short_circuit"] = rep.size_short_circuit;
    if (rep.rank) {
      r["rank"] = rep.rank->rank;
      r["full_column_rank"] = rep.rank->full_column_rank;
      r["tolerance"] = rep.rank->tolerance;
      if (rep.rank->smallest_retained_singular_value)
        r["smallest_retained"] = *rep.rank->smallest_retained_singular_value;
      if (rep.rank->largest_discarded_singular_value)
        r["largest_discarded"] = *rep.rank->largest_discarded_singular_value;
    }
    systems.push_back(std::move(r));
  }
  j["systems"] = std::move(systems);
  j["discarded_range_eigenvalues"] = c.discarded_range_eigenvalues;
  j["input"] = {{"name", file.provenance.input_name}, {"fnv1a64", file.provenance.input_hash}};
  j["elapsed_ms"] = file.provenance.elapsed_ms;
  return j.dump(2) + "\n";
}

CertificateFile parse_certificate(const std::string& text) {
  json j = json::parse(text);
  check_schema(j);
  CertificateFile out;
  Certificate& c = out.certificate;
  c.target = target_from_json(j.at("target"));
  const std::string verdict = j.at("verdict").get<std::string>();
  if (verdict == "certified")
    c.verdict = Verdict::Certified;
  else if (verdict == "not_certified_at_level")
    c.verdict = Verdict::NotCertifiedAtLevel;
  else if (verdict == "system_too_large")
    c.verdict = Verdict::SystemTooLarge;
  else
    throw std::invalid_argument("certificate: unknown verdict '" + verdict + "'");
  c.level = j.at("level").get<int>();
  c.level_cap = j.at("level_cap").get<std::uint64_t>();
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "float")
    c.mode = ArithmeticMode::Float;
  else if (mode == "rational")
    c.mode = ArithmeticMode::Rational;
  else
    throw std::invalid_argument("certificate: unknown mode");
  c.requested_rel_tol = j.at("requested_rel_tol").get<double>();
  for (const auto& r : j.at("systems")) {
    SystemReport rep;
    rep.label = r.at("label").get<std::string>();
    rep.level = r.at("level").get<int>();
    rep.rows = r.at("rows").get<std::int64_t>();
    rep.cols = r.at("cols").get<std::int64_t>();
    rep.size_short_circuit = r.at("size_short_circuit").get<bool>();
    if (r.contains("rank")) {
      RankResult rr;
      rr.rank = r.at("rank").get<std::int64_t>();
      rr.full_column_rank = r.at("full_column_rank").get<bool>();
      rr.tolerance = r.at("tolerance").get<double>();
      rr.mode = c.mode;
      if (r.contains("smallest_retained"))
        rr.smallest_retained_singular_value = r.at("smallest_retained").get<double>();
      if (r.contains("largest_discarded"))
        rr.largest_discarded_singular_value = r.at("largest_discarded").get<double>();
      rep.rank = rr;
    }
    c.systems.push_back(std::move(rep));
  }
  c.discarded_range_eigenvalues =
      j.at("discarded_range_eigenvalues").get<std::vector<double>>();
  out.provenance.input_name = j.at("input").at("name").get<std::string>();
  out.provenance.input_hash = j.at("input").at("fnv1a64").get<std::string>();
  out.provenance.elapsed_ms = j.at("elapsed_ms").get<double>();
  return out;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
}

}  // namespace entcert::io
