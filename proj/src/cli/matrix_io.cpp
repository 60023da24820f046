#include "qbound/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace qbound {

using nlohmann::json;

namespace {

std::vector<std::vector<double>> read_grid(const json& doc, const char* field, std::size_t dim,
                                           std::string_view source) {
  const std::string where = std::string(source) + ": field '" + field + "'";
  const json& grid = doc.at(field);
  if (!grid.is_array() || grid.size() != dim) {
    throw InputError(where + ": expected " + std::to_string(dim) + " rows");
  }
  std::vector<std::vector<double>> out(dim, std::vector<double>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = grid[i];
    if (!row.is_array() || row.size() != dim) {
      throw InputError(where + " row " + std::to_string(i) + ": expected " +
                       std::to_string(dim) + " entries");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      if (!row[j].is_number()) {
        throw InputError(where + " entry [" + std::to_string(i) + "][" + std::to_string(j) +
                         "]: not a number");
      }
      out[i][j] = row[j].get<double>();
    }
  }
  return out;
}

}  // namespace

ComplexMatrix parse_matrix_json(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string(source) + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError(std::string(source) + ": expected a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1) {
    throw InputError(std::string(source) + ": field 'dim' must be a positive integer");
  }
  const auto dim = doc["dim"].get<std::size_t>();
  if (!doc.contains("re")) throw InputError(std::string(source) + ": missing field 're'");
  const auto re = read_grid(doc, "re", dim, source);
  std::vector<std::vector<double>> im(dim, std::vector<double>(dim, 0.0));
  if (doc.contains("im")) im = read_grid(doc, "im", dim, source);

  std::vector<cplx> entries;
  entries.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) entries.emplace_back(re[i][j], im[i][j]);
  try {
    return ComplexMatrix(dim, std::move(entries));
  } catch (const Error& e) {
    throw InputError(std::string(source) + ": " + e.what());
  }
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_json(buf.str(), path.string());
}

std::string matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json rr = json::array();
    json ri = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return json{{"dim", m.dim()}, {"re", re}, {"im", im}}.dump();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(path.string() + ": cannot write output");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw InputError(path.string() + ": write failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError(path.string() + ": cannot rename temporary output");
  }
}

}  // namespace qbound
