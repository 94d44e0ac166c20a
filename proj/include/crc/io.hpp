// io.hpp: text / JSON / CSV renderings and the basis export format
//
// JSON documents carry "schema_version". Half-integer labels are written as
// twice-values (j2, m2) so no label ever goes through float parsing; complex
// entries are [re, im] pairs printed in shortest round-trip form (at most 17
// significant digits), so a re-import reproduces every double exactly.

#pragma once

#include "crc/structure.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace crc {

inline constexpr int kSchemaVersion = 1;

std::string report_text(const StructureReport& report);
nlohmann::json report_json(const StructureReport& report);
std::string report_csv(const StructureReport& report);

/// The Pascal-row staircase with one horizontal j-bar per level; empty for n > 12.
std::string render_staircase(const StructureReport& report);

/// (j2, mu) rows, mu 1-based, in U column order.
nlohmann::json block_map_json(const StructureDecomposition& decomp);

/// Full basis: one entry per |j,m,mu> with its support indices and [re, im] values.
nlohmann::json basis_json(const StructureDecomposition& decomp);

nlohmann::json projections_json(const StructureDecomposition& decomp);

struct BasisEntry {
    int j2 = 0;
    int mu = 0;  // 1-based
    int m2 = 0;
    std::vector<Eigen::Index> indices;
    std::vector<Complex> values;
};

struct ImportedBasis {
    int n = 0;
    int d = 0;
    Eigen::Index dim = 0;
    std::vector<BasisEntry> entries;  // in U column order

    ComplexMatrix dense_unitary() const;
};

/// Throws Error(ParseError) on schema mismatch or malformed content.
ImportedBasis import_basis(const nlohmann::json& doc);

/// RFC-4180 style: quote when the field holds a comma, quote, CR or LF.
std::string csv_field(const std::string& field);

/// Throws Error(IoError).
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace crc
