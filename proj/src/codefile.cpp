#include "nlturbo/codefile.hpp"

#include <fstream>
#include <sstream>

namespace nlturbo {

namespace {

struct Line {
    std::vector<std::string> tokens;
    int number = 0;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (const size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        Line line;
        line.number = number;
        std::string tok;
        while (ss >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

int parse_int(const std::string& tok, int line) {
    try {
        size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument{""};
        return v;
    } catch (const std::exception&) {
        throw parse_error("expected an integer, got '" + tok + "'", line);
    }
}

uint64_t parse_u64(const std::string& tok, int line) {
    try {
        size_t pos = 0;
        const uint64_t v = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument{""};
        return v;
    } catch (const std::exception&) {
        throw parse_error("expected an unsigned integer, got '" + tok + "'", line);
    }
}

} // namespace

CodeFileData parse_code_file(std::istream& in) {
    const std::vector<Line> lines = tokenize(in);
    CodeFileData data;
    size_t i = 0;
    const auto need = [&](const Line& line, size_t count) {
        if (line.tokens.size() != count)
            throw parse_error("expected " + std::to_string(count - 1) + " value(s) after '" +
                                  line.tokens[0] + "'",
                              line.number);
    };
    const auto read_matrix = [&](std::vector<std::string>& out, const char* what) {
        if (data.states <= 0 || data.k <= 0)
            throw parse_error(std::string(what) + " section before states/k", lines[i].number);
        const int per_row = 1 << data.k;
        ++i;
        for (int s = 0; s < data.states; ++s) {
            if (i >= lines.size())
                throw parse_error(std::string("truncated ") + what + " section",
                                  lines.back().number);
            const Line& row = lines[i];
            if (static_cast<int>(row.tokens.size()) != per_row)
                throw parse_error(std::string(what) + " row needs " + std::to_string(per_row) +
                                      " entries",
                                  row.number);
            for (const std::string& tok : row.tokens) out.push_back(tok);
            ++i;
        }
    };

    while (i < lines.size()) {
        const Line& line = lines[i];
        const std::string& key = line.tokens[0];
        if (key == "nlturbo-code") {
            ++i;
        } else if (key == "states") {
            need(line, 2);
            data.states = parse_int(line.tokens[1], line.number);
            ++i;
        } else if (key == "k") {
            need(line, 2);
            data.k = parse_int(line.tokens[1], line.number);
            ++i;
        } else if (key == "n") {
            need(line, 2);
            data.n = parse_int(line.tokens[1], line.number);
            ++i;
        } else if (key == "next_state") {
            std::vector<std::string> toks;
            read_matrix(toks, "next_state");
            for (const std::string& tok : toks)
                data.next_state.push_back(parse_int(tok, line.number));
        } else if (key == "labels") {
            if (data.n <= 0) throw parse_error("labels section before n", line.number);
            const int first = lines[i].number;
            read_matrix(data.labels, "labels");
            for (const std::string& label : data.labels) {
                try {
                    octal_decode(label, data.n);
                } catch (const std::invalid_argument& e) {
                    throw parse_error(e.what(), first);
                }
            }
        } else if (key == "K") {
            need(line, 2);
            data.info_bits = parse_int(line.tokens[1], line.number);
            ++i;
        } else if (key == "systematic") {
            need(line, 2);
            if (line.tokens[1] == "true")
                data.systematic = true;
            else if (line.tokens[1] == "false")
                data.systematic = false;
            else
                throw parse_error("systematic must be true or false", line.number);
            ++i;
        } else if (key == "interleaver") {
            need(line, 4);
            data.interleaver = CodeFileData::InterleaverSpec{
                parse_int(line.tokens[1], line.number), parse_int(line.tokens[2], line.number),
                parse_u64(line.tokens[3], line.number)};
            ++i;
        } else if (key == "puncture1") {
            need(line, 2);
            data.puncture1 = line.tokens[1];
            ++i;
        } else if (key == "puncture2") {
            need(line, 2);
            data.puncture2 = line.tokens[1];
            ++i;
        } else if (key == "metric") {
            need(line, 2);
            try {
                data.metric = metric_from_string(line.tokens[1]);
            } catch (const std::invalid_argument& e) {
                throw parse_error(e.what(), line.number);
            }
            ++i;
        } else if (key == "declared_table_ones") {
            need(line, 2);
            data.declared_table_ones = parse_int(line.tokens[1], line.number);
            ++i;
        } else if (key == "declared_branch") {
            need(line, 2);
            data.declared_branch = parse_int(line.tokens[1], line.number);
            ++i;
        } else if (key == "declared_merge") {
            need(line, 2);
            data.declared_merge = parse_int(line.tokens[1], line.number);
            ++i;
        } else if (key == "declared_efd") {
            need(line, 2);
            data.declared_efd = parse_int(line.tokens[1], line.number);
            ++i;
        } else {
            throw parse_error("unknown key '" + key + "'", line.number);
        }
    }
    if (data.states <= 0) throw parse_error("missing states", 0);
    if (data.k <= 0) throw parse_error("missing k", 0);
    if (data.next_state.empty()) throw parse_error("missing next_state section", 0);
    if (data.labels.empty() && data.n > 0 && (data.info_bits || data.interleaver))
        throw parse_error("turbo section requires a labels section", 0);
    return data;
}

CodeFileData load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file '" + path + "'");
    return parse_code_file(in);
}

void write_code_file(std::ostream& out, const CodeFileData& data) {
    out << "nlturbo-code v1\n";
    out << "states " << data.states << "\n";
    out << "k " << data.k << "\n";
    out << "n " << data.n << "\n";
    const int per_row = 1 << data.k;
    out << "next_state\n";
    for (int s = 0; s < data.states; ++s) {
        for (int u = 0; u < per_row; ++u)
            out << data.next_state[static_cast<size_t>(s) * per_row + u]
                << (u + 1 == per_row ? "\n" : " ");
    }
    if (!data.labels.empty()) {
        out << "labels\n";
        for (int s = 0; s < data.states; ++s) {
            for (int u = 0; u < per_row; ++u)
                out << data.labels[static_cast<size_t>(s) * per_row + u]
                    << (u + 1 == per_row ? "\n" : " ");
        }
    }
    if (data.info_bits) out << "K " << *data.info_bits << "\n";
    if (data.systematic) out << "systematic " << (*data.systematic ? "true" : "false") << "\n";
    if (data.interleaver)
        out << "interleaver " << data.interleaver->symbols << " " << data.interleaver->spread
            << " " << data.interleaver->seed << "\n";
    if (data.puncture1) out << "puncture1 " << *data.puncture1 << "\n";
    if (data.puncture2) out << "puncture2 " << *data.puncture2 << "\n";
    if (data.metric) out << "metric " << to_string(*data.metric) << "\n";
    if (data.declared_table_ones) out << "declared_table_ones " << *data.declared_table_ones << "\n";
    if (data.declared_branch) out << "declared_branch " << *data.declared_branch << "\n";
    if (data.declared_merge) out << "declared_merge " << *data.declared_merge << "\n";
    if (data.declared_efd) out << "declared_efd " << *data.declared_efd << "\n";
}

void save_code_file(const std::string& path, const CodeFileData& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write code file '" + path + "'");
    write_code_file(out, data);
}

TrellisTopology topology_from(const CodeFileData& data) {
    return TrellisTopology(data.states, data.k, data.next_state);
}

TableTrellis trellis_from(const CodeFileData& data) {
    if (data.labels.empty()) throw std::invalid_argument("code file has no labels section");
    if (data.n <= 0) throw std::invalid_argument("code file has no n");
    TrellisTopology topology(data.states, data.k, data.next_state);
    std::vector<StateSubTable> subtables;
    subtables.reserve(static_cast<size_t>(data.states));
    const int per_row = 1 << data.k;
    for (int s = 0; s < data.states; ++s) {
        std::vector<uint32_t> rows(static_cast<size_t>(per_row));
        for (int u = 0; u < per_row; ++u)
            rows[static_cast<size_t>(u)] =
                octal_decode(data.labels[static_cast<size_t>(s) * per_row + u], data.n);
        subtables.emplace_back(data.k, data.n, std::move(rows));
    }
    return TableTrellis(std::move(topology), std::move(subtables));
}

CodeSpec code_spec_from(const CodeFileData& data) {
    if (!data.info_bits || !data.interleaver)
        throw std::invalid_argument("code file lacks the turbo section (K, interleaver)");
    TableTrellis trellis = trellis_from(data);
    const PuncturePattern p1 = data.puncture1
                                   ? PuncturePattern::from_octal(*data.puncture1, data.n)
                                   : PuncturePattern::none(data.n);
    const PuncturePattern p2 = data.puncture2
                                   ? PuncturePattern::from_octal(*data.puncture2, data.n)
                                   : PuncturePattern::none(data.n);
    CodeSpec spec{std::move(trellis),
                  make_spread_interleaver(data.interleaver->symbols, data.interleaver->spread,
                                          data.interleaver->seed),
                  p1,
                  p2,
                  data.systematic.value_or(true),
                  *data.info_bits};
    spec.validate();
    return spec;
}

CodeFileData describe_code(const TableTrellis& trellis, DistanceMetric metric,
                           const CodeSpec* spec) {
    CodeFileData data;
    data.states = trellis.num_states();
    data.k = trellis.k();
    data.n = trellis.n();
    for (int s = 0; s < data.states; ++s)
        for (int u = 0; u < trellis.num_inputs(); ++u) {
            data.next_state.push_back(trellis.topology().next_state(s, u));
            data.labels.push_back(octal_encode(trellis.label(s, u), data.n));
        }
    if (spec) {
        data.info_bits = spec->info_bits;
        data.systematic = spec->systematic;
        data.interleaver = CodeFileData::InterleaverSpec{
            spec->interleaver.size(), spec->interleaver.spread_target, spec->interleaver.seed};
        data.puncture1 = spec->puncture1.to_octal();
        data.puncture2 = spec->puncture2.to_octal();
    }
    const DistanceReport report = distance_report(trellis, metric);
    const bool systematic = spec ? spec->systematic : true;
    const FreeDistanceResult efd = effective_free_distance(
        trellis, metric, systematic, default_free_distance_depth(trellis));
    data.metric = metric;
    data.declared_table_ones = trellis.total_ones();
    data.declared_branch = report.branch_distance;
    data.declared_merge = report.merge_distance;
    data.declared_efd = efd.value;
    return data;
}

AuditResult audit_code(const CodeFileData& data, DistanceMetric metric) {
    const TableTrellis trellis = trellis_from(data);
    AuditResult result;
    result.report = distance_report(trellis, metric);
    const bool systematic = data.systematic.value_or(true);
    result.free_distance = effective_free_distance(trellis, metric, systematic,
                                                   default_free_distance_depth(trellis));
    result.table_density = ones_density(trellis);
    if (data.info_bits && data.interleaver) result.rate = code_spec_from(data).rate();

    const auto check = [&](const char* what, auto declared, auto actual) {
        if (declared && *declared != actual)
            result.mismatches.push_back(std::string(what) + ": declared " +
                                        std::to_string(*declared) + ", recomputed " +
                                        std::to_string(actual));
    };
    check("table_ones", data.declared_table_ones, trellis.total_ones());
    check("branch_distance", data.declared_branch, result.report.branch_distance);
    check("merge_distance", data.declared_merge, result.report.merge_distance);
    check("effective_free_distance", data.declared_efd, result.free_distance.value);
    return result;
}

} // namespace nlturbo
