#include "afftree/json_io.hpp"

#include <cctype>

#include "afftree/error.hpp"

namespace afftree::json_io {

std::string word_to_string(const Word& w, int d) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (d > 10 && i > 0) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

Word word_from_string(const std::string& text, int d) {
  Word w;
  if (d > 10) {
    std::size_t i = 0;
    while (i < text.size()) {
      const std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i || i - start > 6) throw ParseError("expected letter", 1, static_cast<int>(start) + 1);
      w.push_back(std::stoi(text.substr(start, i - start)));
      if (w.back() >= d) throw ParseError("letter out of range", 1, static_cast<int>(start) + 1);
      if (i < text.size() && text[i++] != ',') throw ParseError("expected ','", 1, static_cast<int>(i));
    }
    return w;
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!std::isdigit(static_cast<unsigned char>(c)) || c - '0' >= d)
      throw ParseError("letter out of range", 1, static_cast<int>(i) + 1);
    w.push_back(c - '0');
  }
  return w;
}

Json to_json(const EpSeq& s) { return s.to_string(); }

EpSeq epseq_from_json(const Json& j, int modulus) {
  if (!j.is_string()) throw Error("expected an eventually periodic sequence string");
  return EpSeq::parse(j.get<std::string>(), modulus);
}

namespace {

int modulus_of(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j["d"].is_number_integer()) throw Error("expected an object with integer \"d\"");
  return j["d"].get<int>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
  return j[key];
}

std::vector<EpSeq> rows_from_json(const Json& j, int d) {
  if (!j.is_array()) throw Error("expected an array of rows");
  std::vector<EpSeq> rows;
  for (const auto& r : j) rows.push_back(epseq_from_json(r, d));
  return rows;
}

}  // namespace

Json to_json(const DiagPeriodicMatrix& A) {
  Json j;
  j["d"] = A.modulus();
  j["base_rows"] = Json::array();
  for (const auto& r : A.base_rows()) j["base_rows"].push_back(r.to_string());
  j["template_rows"] = Json::array();
  for (const auto& r : A.template_rows()) j["template_rows"].push_back(r.to_string());
  return j;
}

DiagPeriodicMatrix matrix_from_json(const Json& j) {
  const int d = modulus_of(j);
  return DiagPeriodicMatrix(d, rows_from_json(field(j, "base_rows"), d), rows_from_json(field(j, "template_rows"), d));
}

Json to_json(const AffineAutomorphism& p) {
  Json j;
  j["d"] = p.modulus();
  j["A"] = to_json(p.matrix());
  j["b"] = to_json(p.vector());
  return j;
}

AffineAutomorphism affine_from_json(const Json& j) {
  const int d = modulus_of(j);
  auto A = matrix_from_json(field(j, "A"));
  if (A.modulus() != d) throw ModulusMismatch(d, A.modulus());
  return AffineAutomorphism(std::move(A), epseq_from_json(field(j, "b"), d));
}

Json to_json(const AffineRefutation& r, int d) {
  Json j;
  j["kind"] = r.kind == AffineRefutation::Kind::non_unit_diagonal ? "non_unit_diagonal" : "disagreement";
  if (r.kind == AffineRefutation::Kind::non_unit_diagonal) j["basis_index"] = r.basis_index;
  j["word"] = word_to_string(r.word, d);
  return j;
}

Json to_json(const MealyMachine& m, const std::vector<std::string>& names) {
  auto name = [&](std::size_t q) { return q < names.size() ? names[q] : "q" + std::to_string(q); };
  Json j;
  j["d"] = m.d;
  j["states"] = Json::array();
  for (std::size_t q = 0; q < m.size(); ++q) {
    Json s;
    s["name"] = name(q);
    s["sections"] = Json::array();
    for (int r : m.next[q]) s["sections"].push_back(name(static_cast<std::size_t>(r)));
    s["perm"] = m.out[q].to_cycles();
    j["states"].push_back(std::move(s));
  }
  return j;
}

Json to_json(const TreeAutomorphism& g) { return to_json(g.machine()); }

MealyMachine machine_from_json(const Json& j) {
  MealyMachine m;
  m.d = modulus_of(j);
  const auto& states = field(j, "states");
  if (!states.is_array() || states.empty()) throw Error("expected a nonempty \"states\" array");
  std::vector<std::string> names;
  for (const auto& s : states) names.push_back(field(s, "name").get<std::string>());
  auto index = [&](const std::string& n) {
    for (std::size_t q = 0; q < names.size(); ++q)
      if (names[q] == n) return static_cast<int>(q);
    throw Error("undefined state \"" + n + "\"");
  };
  for (const auto& s : states) {
    std::vector<int> row;
    for (const auto& n : field(s, "sections")) row.push_back(index(n.get<std::string>()));
    m.next.push_back(std::move(row));
    m.out.push_back(Permutation::parse_cycles(field(s, "perm").get<std::string>(), m.d));
  }
  m.validate();
  return m;
}

Json to_json(const Portrait& p) {
  Json j;
  j["d"] = p.d;
  j["depth"] = p.depth;
  j["levels"] = Json::array();
  for (const auto& level : p.levels) {
    Json l = Json::array();
    for (const auto& perm : level) l.push_back(perm.to_cycles());
    j["levels"].push_back(std::move(l));
  }
  return j;
}

Json to_json(const LevelPermutations& s) {
  Json j;
  j["preperiod"] = Json::array();
  for (const auto& p : s.preperiod) j["preperiod"].push_back(p.to_cycles());
  j["period"] = Json::array();
  for (const auto& p : s.period) j["period"].push_back(p.to_cycles());
  return j;
}

Json to_json(const LamplighterElement& g) {
  Json j;
  j["lamp"] = g.lamp.to_string('x');
  j["shift"] = g.shift;
  j["text"] = g.to_string();
  return j;
}

}  // namespace afftree::json_io
