#include "burau/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace burau {

namespace {

std::string strip_comments(std::string_view text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (!comment) out.push_back(c);
  }
  return out;
}

Permutation factor_from_json(const json& word, int n) {
  if (!word.is_array()) throw ParseError("factor must be an array of generator indices");
  std::vector<int> letters;
  for (const auto& x : word) {
    if (!x.is_number_integer()) throw ParseError("generator index must be an integer");
    const int i = x.get<int>();
    if (i < 1 || i >= n) throw ParseError("generator index " + std::to_string(i) + " out of range");
    letters.push_back(i);
  }
  const Permutation p = Permutation::from_word(n, letters);
  if (p.length() != static_cast<int>(letters.size())) throw ParseError("factor word is not reduced");
  return p;
}

template <class Ring>
LaurentMatrix<Ring> matrix_from_json(const json& j, const Ring& ring) {
  const auto size = j.at("size").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != size) throw ParseError("matrix entries do not match size");
  LaurentMatrix<Ring> m(ring, size);
  for (std::size_t i = 0; i < size; ++i) {
    if (!entries[i].is_array() || entries[i].size() != size) throw ParseError("matrix row does not match size");
    for (std::size_t k = 0; k < size; ++k) {
      std::vector<typename LaurentPoly<Ring>::Term> terms;
      for (const auto& t : entries[i][k]) {
        if (!t.is_array() || t.size() != 2) throw ParseError("term must be [exponent, coefficient]");
        const int e = t[0].get<int>();
        const auto& c = t[1];
        terms.emplace_back(e, c.is_string() ? ring.parse(c.get<std::string>()) : ring.from_int(c.get<std::int64_t>()));
      }
      m.set(i, k, LaurentPoly<Ring>::from_terms(ring, terms));
    }
  }
  return m;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ArtinWord parse_artin_word(std::string_view text, int n) {
  const std::string body = strip_comments(text);
  std::vector<int> letters;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const char c = body[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < body.size() && !std::isspace(static_cast<unsigned char>(body[end])) && body[end] != ',') ++end;
    const std::string_view token(body.data() + pos, end - pos);
    int value = 0;
    const char* first = token.data();
    if (!token.empty() && token.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("invalid Artin letter '" + std::string(token) + "'");
    }
    if (value == 0 || value >= n || value <= -n) {
      throw ParseError("Artin letter " + std::to_string(value) + " out of range for B_" + std::to_string(n));
    }
    letters.push_back(value);
    pos = end;
  }
  return ArtinWord(n, std::move(letters));
}

json braid_to_json(const Braid& b) {
  json factors = json::array();
  for (const auto& f : b.factors()) factors.push_back(f.reduced_word());
  return json{{"n", b.strands()}, {"inf", b.inf()}, {"factors", std::move(factors)}};
}

Braid braid_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 2 || n > kMaxStrands) throw ParseError("strand count out of range");
    const int inf = j.value("inf", 0);
    std::vector<Permutation> factors;
    for (const auto& word : j.at("factors")) factors.push_back(factor_from_json(word, n));
    return Braid::from_normal_form(n, inf, std::move(factors));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid braid JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid braid: ") + e.what());
  }
}

bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  }
  return false;
}

Braid read_braid_file(const std::filesystem::path& path, int n) {
  const std::string text = read_text_file(path);
  if (looks_like_json(text)) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
    Braid b = braid_from_json(j);
    if (b.strands() != n) {
      throw ParseError(path.string() + ": braid has " + std::to_string(b.strands()) + " strands, expected " +
                       std::to_string(n));
    }
    return b;
  }
  return gnf_from_artin(parse_artin_word(text, n));
}

Braid parse_printed_gnf(std::string_view text, int n, int index_base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int inf = 0;
  std::vector<Permutation> factors;
  while (std::getline(in, line)) {
    line = strip_comments(line);
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == "inf") {
      if (!(words >> inf)) throw ParseError("malformed inf line");
      continue;
    }
    std::vector<int> letters;
    std::string name = first;
    do {
      if (name.size() < 2 || name[0] != 's') throw ParseError("bad generator name '" + name + "'");
      letters.push_back(std::stoi(name.substr(1)) - index_base + 1);
    } while (words >> name);
    factors.push_back(factor_from_json(json(letters), n));
  }
  try {
    return Braid::from_normal_form(n, inf, std::move(factors));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("printed normal form is invalid: ") + e.what());
  }
}

ZMatrix z_matrix_from_json(const json& j) {
  if (j.at("m").get<std::int64_t>() != 0) throw ParseError("expected an integral matrix (m = 0)");
  return matrix_from_json(j, IntegerRing{});
}

ModMatrix mod_matrix_from_json(const json& j) {
  return matrix_from_json(j, ModularRing(j.at("m").get<std::int64_t>()));
}

SearchConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  SearchConfig c;
  try {
    c.n = j.value("n", c.n);
    c.modulus = j.value("modulus", c.modulus);
    c.capacity = j.value("capacity", c.capacity);
    c.max_level = j.value("max_level", c.max_level);
    c.seed = j.value("seed", c.seed);
    c.stop_on_kernel = j.value("stop_on_kernel", c.stop_on_kernel);
    c.threads = j.value("threads", c.threads);
    if (j.contains("forced_target") && !j.at("forced_target").is_null()) {
      std::filesystem::path target = j.at("forced_target").get<std::string>();
      if (target.is_relative()) target = base_dir / target;
      c.forced_target = read_braid_file(target, c.n);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid search config: ") + e.what());
  }
  return c;
}

void write_min_projlen_csv(std::ostream& out, const SearchReport& report) {
  out << "level,min_projlen\n";
  for (const auto& [level, m] : report.min_projlen_per_level) out << level << ',' << m << '\n';
}

void write_bucket_stats_csv(std::ostream& out, const SearchReport& report) {
  out << "level,projlen,seen\n";
  for (const auto& [key, seen] : report.bucket_stats) out << key.first << ',' << key.second << ',' << seen << '\n';
}

void write_kernels_jsonl(std::ostream& out, const SearchReport& report) {
  for (const auto& f : report.found) out << braid_to_json(f.braid).dump() << '\n';
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points) {
  out << "prefix_index,garside_length,projlen\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << (i + 1) << ',' << points[i].garside_length << ',' << points[i].projlen << '\n';
  }
}

void write_forced_csv(std::ostream& out, std::span<const ForcedPrefixStat> stats, std::uint64_t k) {
  out << "prefix_index,r,k\n";
  for (const auto& s : stats) out << s.index << ',' << s.r << ',' << k << '\n';
}

void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points) {
  out << "garside_length,half_projlen\n";
  for (const auto& p : points) {
    out << p.garside_length << ',' << p.projlen / 2 << (p.projlen % 2 ? ".5" : "") << '\n';
  }
}

json pattern_to_json(const CoefficientPattern& pattern) {
  return json{{"projlen", pattern.projlen}, {"head", pattern.head}, {"tail", pattern.tail}};
}

}  // namespace burau
