#include "orthohaar/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace orthohaar {

std::string format_17g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(std::ostream& os, std::span<const HaarSample> samples) {
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (k) os << '\n';
    const auto& m = samples[k].gamma.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << format_17g(m(i, j));
      os << '\n';
    }
  }
}

// Numbers are written by hand so the digit count is fixed.
void write_json(std::ostream& os, std::span<const HaarSample> samples) {
  os << '[';
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& m = samples[k].gamma.matrix();
    os << (k ? ",\n " : "\n ") << "{\"p\": " << m.rows() << ", \"seed\": \""
       << samples[k].seed_record.str() << "\", \"rows\": [";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << format_17g(m(i, j));
      os << ']';
    }
    os << "]}";
  }
  os << "\n]\n";
}

std::vector<Matrix> read_json_matrices(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<Matrix> out;
  for (const auto& item : doc) {
    const auto p = item.at("p").get<std::size_t>();
    const auto& rows = item.at("rows");
    if (rows.size() != p) throw std::invalid_argument("read_json_matrices: row count != p");
    Matrix m(p, p);
    for (std::size_t i = 0; i < p; ++i) {
      if (rows[i].size() != p) throw std::invalid_argument("read_json_matrices: ragged row");
      for (std::size_t j = 0; j < p; ++j) m(i, j) = rows[i][j].get<double>();
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Matrix> read_text_matrices(const std::string& text) {
  std::vector<Matrix> out;
  std::vector<std::vector<double>> block;
  auto flush = [&] {
    if (block.empty()) return;
    Matrix m(block.size(), block[0].size());
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (block[i].size() != m.cols()) throw std::invalid_argument("read_text_matrices: ragged row");
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = block[i][j];
    }
    out.push_back(std::move(m));
    block.clear();
  };
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      flush();
      continue;
    }
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw std::invalid_argument("read_text_matrices: bad number '" + tok + "'");
      row.push_back(v);
    }
    block.push_back(std::move(row));
  }
  flush();
  return out;
}

}  // namespace orthohaar
