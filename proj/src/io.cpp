#include "crc/io.hpp"

#include "crc/error.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace crc {

using nlohmann::json;

std::string report_text(const StructureReport& report) {
    std::ostringstream out;
    out << "collective rotation structure: n=" << report.n << ", d=" << report.d << " (dim " << report.total_dim
        << ")\n\n";
    out << std::left << std::setw(8) << "j" << std::setw(8) << "p_j" << std::setw(8) << "q_j" << std::setw(10)
        << "p_j*q_j" << "p_j^2\n";
    for (const StructureRow& row : report.rows) {
        out << std::setw(8) << row.j.to_string() << std::setw(8) << row.p << std::setw(8) << row.q << std::setw(10)
            << row.pq() << row.p_sq() << "\n";
    }
    out << std::setw(24) << "total" << std::setw(10) << report.total_dim << report.commutant_dim << "\n\n";
    out << "dim Fix(E) = dim A' = " << report.commutant_dim << "\n";
    out << "dim A = " << report.algebra_dim << "\n";
    out << "weight dims (m = " << report.weight_dims.front().m.to_string() << " .. "
        << report.weight_dims.back().m.to_string() << "):";
    for (const WeightRow& w : report.weight_dims) out << " " << w.dim;
    out << "\n";
    return out.str();
}

json report_json(const StructureReport& report) {
    json rows = json::array();
    for (const StructureRow& row : report.rows) {
        rows.push_back({{"j", row.j.to_string()},
                        {"j2", row.j.twice()},
                        {"p", row.p},
                        {"q", row.q},
                        {"pq", row.pq()},
                        {"p_squared", row.p_sq()}});
    }
    json weights = json::array();
    for (const WeightRow& w : report.weight_dims) weights.push_back({{"m2", w.m.twice()}, {"dim", w.dim}});
    return {{"schema_version", kSchemaVersion},
            {"kind", "structure"},
            {"n", report.n},
            {"d", report.d},
            {"rows", rows},
            {"weight_dims", weights},
            {"totals", {{"dim", report.total_dim}, {"commutant_dim", report.commutant_dim},
                        {"algebra_dim", report.algebra_dim}}}};
}

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string report_csv(const StructureReport& report) {
    std::ostringstream out;
    out << "j,j2,p,q,pq,p_squared\r\n";
    for (const StructureRow& row : report.rows) {
        out << csv_field(row.j.to_string()) << ',' << row.j.twice() << ',' << row.p << ',' << row.q << ','
            << row.pq() << ',' << row.p_sq() << "\r\n";
    }
    return out.str();
}

std::string render_staircase(const StructureReport& report) {
    if (report.n > 12 || report.weight_dims.empty()) return {};
    const int ns2 = report.n * (report.d - 1);
    const std::size_t columns = report.weight_dims.size();
    const std::uint64_t height = report.weight_dims[columns / 2].dim;  // peak sits at the centre

    std::ostringstream out;
    for (std::uint64_t level = height; level >= 1; --level) {
        // Row `level` is covered by the weights with dim V_m >= level; it is the
        // mu-th copy of the block whose j-bar spans exactly those weights.
        std::string line;
        int lowest_m2 = ns2 + 1;
        for (std::size_t c = 0; c < columns; ++c) {
            const bool filled = report.weight_dims[c].dim >= level;
            line += filled ? "[#]" : "   ";
            if (filled) lowest_m2 = std::min(lowest_m2, report.weight_dims[c].m.twice());
        }
        const HalfInt j = HalfInt::from_twice(-lowest_m2);
        const std::uint64_t above = j.twice() + 2 <= ns2 ? report.weight_dims[static_cast<std::size_t>((j.twice() + 2 + ns2) / 2)].dim : 0;
        out << line << "   j=" << j.to_string() << "  mu=" << level - above << "\n";
    }
    std::string axis;
    for (std::size_t c = 0; c < columns; ++c) {
        std::string label = report.weight_dims[c].m.to_string();
        if (label.size() > 3) label = "";  // "-3/2" does not fit a cell
        axis += std::string(3 - label.size(), ' ') + label;
    }
    out << axis << "   <- m\n";
    return out.str();
}

namespace {

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_pair(const json& pair) {
    if (!pair.is_array() || pair.size() != 2) throw Error(ErrorCode::ParseError, "complex entry must be [re, im]");
    return {pair[0].get<double>(), pair[1].get<double>()};
}

}  // namespace

json block_map_json(const StructureDecomposition& decomp) {
    json rows = json::array();
    Eigen::Index column = 0;
    for (const IrrepBlock& block : decomp.blocks) {
        for (Eigen::Index mu = 0; mu < block.p; ++mu) {
            rows.push_back({{"j2", block.j.twice()}, {"mu", mu + 1}, {"q", block.q}, {"first_column", column}});
            column += block.q;
        }
    }
    return rows;
}

json basis_json(const StructureDecomposition& decomp) {
    json vectors = json::array();
    for (std::size_t b = 0; b < decomp.blocks.size(); ++b) {
        const IrrepBlock& block = decomp.blocks[b];
        for (Eigen::Index mu = 0; mu < block.p; ++mu) {
            for (Eigen::Index k = 0; k < block.q; ++k) {
                const int m2 = -block.j.twice() + 2 * static_cast<int>(k);
                const WeightSpace& space = decomp.weight_space(HalfInt::from_twice(m2));
                const ComplexMatrix& c = block.coords[static_cast<std::size_t>(k)];
                json indices = json::array();
                json values = json::array();
                for (Eigen::Index r = 0; r < space.dim(); ++r) {
                    if (c(r, mu) == Complex(0.0, 0.0)) continue;
                    indices.push_back(space.indices[static_cast<std::size_t>(r)]);
                    values.push_back(complex_pair(c(r, mu)));
                }
                vectors.push_back({{"j2", block.j.twice()},
                                   {"mu", mu + 1},
                                   {"m2", m2},
                                   {"column", decomp.column(b, mu, k)},
                                   {"indices", indices},
                                   {"values", values}});
            }
        }
    }
    return {{"schema_version", kSchemaVersion},
            {"kind", "basis"},
            {"n", decomp.system->n},
            {"d", decomp.system->d},
            {"dim", decomp.system->dim},
            {"ordering", "j ascending, mu ascending, m ascending"},
            {"blocks", block_map_json(decomp)},
            {"vectors", vectors}};
}

json projections_json(const StructureDecomposition& decomp) {
    json out = json::array();
    for (const CentralProjection& cp : central_projections(decomp)) {
        json entries = json::array();
        const SparseOperator& p = cp.projection;
        for (int c = 0; c < p.outerSize(); ++c) {
            for (SparseOperator::InnerIterator it(p, c); it; ++it) {
                if (it.value() == Complex(0.0, 0.0)) continue;
                entries.push_back({it.row(), it.col(), complex_pair(it.value())});
            }
        }
        out.push_back({{"j2", cp.j.twice()}, {"entries", entries}});
    }
    return {{"schema_version", kSchemaVersion},
            {"kind", "central_projections"},
            {"n", decomp.system->n},
            {"d", decomp.system->d},
            {"dim", decomp.system->dim},
            {"format", "[row, col, [re, im]]"},
            {"projections", out}};
}

ImportedBasis import_basis(const json& doc) {
    try {
        if (doc.at("schema_version").get<int>() != kSchemaVersion) {
            throw Error(ErrorCode::ParseError, "unsupported schema_version " + doc.at("schema_version").dump());
        }
        if (doc.at("kind").get<std::string>() != "basis") throw Error(ErrorCode::ParseError, "not a basis document");
        ImportedBasis out;
        out.n = doc.at("n").get<int>();
        out.d = doc.at("d").get<int>();
        out.dim = doc.at("dim").get<Eigen::Index>();
        for (const json& v : doc.at("vectors")) {
            BasisEntry e;
            e.j2 = v.at("j2").get<int>();
            e.mu = v.at("mu").get<int>();
            e.m2 = v.at("m2").get<int>();
            e.indices = v.at("indices").get<std::vector<Eigen::Index>>();
            for (const json& pair : v.at("values")) e.values.push_back(parse_pair(pair));
            if (e.indices.size() != e.values.size()) throw Error(ErrorCode::ParseError, "indices/values length differ");
            for (Eigen::Index idx : e.indices) {
                if (idx < 0 || idx >= out.dim) throw Error(ErrorCode::ParseError, "basis index out of range");
            }
            out.entries.push_back(std::move(e));
        }
        if (static_cast<Eigen::Index>(out.entries.size()) != out.dim) {
            throw Error(ErrorCode::ParseError, "expected " + std::to_string(out.dim) + " vectors");
        }
        return out;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

ComplexMatrix ImportedBasis::dense_unitary() const {
    ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
    for (std::size_t col = 0; col < entries.size(); ++col) {
        const BasisEntry& e = entries[col];
        for (std::size_t i = 0; i < e.indices.size(); ++i) u(e.indices[i], static_cast<Eigen::Index>(col)) = e.values[i];
    }
    return u;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace crc
