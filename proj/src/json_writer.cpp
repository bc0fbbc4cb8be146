#include "polyperiod/json_writer.hpp"

#include <cstdio>
#include <sstream>

namespace polyperiod {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void write_matrix_part(std::ostringstream& out, const Eigen::MatrixXcd& m, bool imag,
                       const char* indent) {
    out << "[";
    for (int i = 0; i < m.rows(); ++i) {
        out << (i ? ", " : "") << "\n" << indent << "  [";
        for (int j = 0; j < m.cols(); ++j)
            out << (j ? ", " : "")
                << format_double(imag ? m(i, j).imag() : m(i, j).real());
        out << "]";
    }
    out << "\n" << indent << "]";
}

void write_matrix(std::ostringstream& out, const char* key, const Eigen::MatrixXcd& m) {
    out << "  \"" << key << "\": {\n    \"re\": ";
    write_matrix_part(out, m, false, "    ");
    out << ",\n    \"im\": ";
    write_matrix_part(out, m, true, "    ");
    out << "\n  }";
}

}  // namespace

std::string serialize_period_result(const PeriodResult& result) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"genus\": " << result.genus << ",\n";
    out << "  \"scheme\": \"" << result.provenance.scheme << "\",\n";
    write_matrix(out, "pi", result.pi);
    out << ",\n";
    write_matrix(out, "pi_star", result.pi_star);
    out << ",\n";
    out << "  \"residuals\": {\n";
    out << "    \"harmonic\": " << format_double(result.harmonic_residual) << ",\n";
    out << "    \"closedness\": " << format_double(result.closedness_residual) << ",\n";
    out << "    \"normalization\": " << format_double(result.normalization_residual)
        << ",\n";
    out << "    \"symmetry\": " << format_double(result.symmetry_defect) << ",\n";
    out << "    \"pi_pi_star\": " << format_double(result.pi_pi_star_defect) << "\n";
    out << "  },\n";
    out << "  \"mesh\": {\n";
    out << "    \"vertices\": " << result.provenance.vertices << ",\n";
    out << "    \"edges\": " << result.provenance.edges << ",\n";
    out << "    \"faces\": " << result.provenance.faces << ",\n";
    out << "    \"min_angle_deg\": "
        << (result.provenance.has_min_angle ? format_double(result.provenance.min_angle_deg)
                                            : std::string("null"))
        << ",\n";
    out << "    \"min_rho\": " << format_double(result.provenance.min_rho) << "\n";
    out << "  }\n";
    out << "}\n";
    return out.str();
}

}  // namespace polyperiod
