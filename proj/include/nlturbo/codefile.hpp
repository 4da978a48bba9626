#ifndef NLTURBO_CODEFILE_HPP
#define NLTURBO_CODEFILE_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlturbo/metrics.hpp"
#include "nlturbo/turbo.hpp"

namespace nlturbo {

class parse_error : public std::runtime_error {
  public:
    parse_error(const std::string& message, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Parsed contents of a code definition file. The trellis section is
/// mandatory; the turbo and declared-metrics sections are optional.
struct CodeFileData {
    int states = 0;
    int k = 0;
    int n = 0;
    std::vector<int> next_state;     ///< row-major, states x 2^k
    std::vector<std::string> labels; ///< row-major octal strings

    std::optional<int> info_bits;
    std::optional<bool> systematic;
    struct InterleaverSpec {
        int symbols = 0;
        int spread = 0;
        uint64_t seed = 0;
    };
    std::optional<InterleaverSpec> interleaver;
    std::optional<std::string> puncture1;
    std::optional<std::string> puncture2;

    std::optional<DistanceMetric> metric;
    std::optional<long> declared_table_ones;
    std::optional<int> declared_branch;
    std::optional<int> declared_merge;
    std::optional<int> declared_efd;
};

CodeFileData parse_code_file(std::istream& in);
CodeFileData load_code_file(const std::string& path);

void write_code_file(std::ostream& out, const CodeFileData& data);
void save_code_file(const std::string& path, const CodeFileData& data);

/// Materializes the next-state structure alone; labels may be absent.
TrellisTopology topology_from(const CodeFileData& data);

/// Materializes the trellis (validates topology and labels).
TableTrellis trellis_from(const CodeFileData& data);

/// Materializes the full CodeSpec; requires the turbo section.
CodeSpec code_spec_from(const CodeFileData& data);

/// Snapshot of a trellis (plus optional turbo parameters) ready to write,
/// including the declared metric values audits verify.
CodeFileData describe_code(const TableTrellis& trellis, DistanceMetric metric,
                           const CodeSpec* spec = nullptr);

struct AuditResult {
    DistanceReport report;
    FreeDistanceResult free_distance;
    double table_density = 0.0;
    std::optional<Rational> rate;
    std::vector<std::string> mismatches; ///< empty = declared values agree
};

/// Recomputes distances and density and compares them with the file's
/// declared values, when present.
AuditResult audit_code(const CodeFileData& data, DistanceMetric metric);

} // namespace nlturbo

#endif
