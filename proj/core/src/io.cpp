#include "netlay/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "netlay/error.hpp"

namespace netlay {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("error while writing '" + path + "'");
}

std::string format_double(double v) {
    char buf[64];
    int len = std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

template <int D>
std::string format_layout_tsv(std::span<const std::string> labels, std::span<const Vec<D>> x) {
    if (labels.size() != x.size()) throw ConfigError("layout tsv: label/position count mismatch");
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out += labels[i];
        for (int k = 0; k < D; ++k) {
            out += '\t';
            out += format_double(x[i][k]);
        }
        out += '\n';
    }
    return out;
}

template std::string format_layout_tsv<2>(std::span<const std::string>, std::span<const Vec2>);
template std::string format_layout_tsv<3>(std::span<const std::string>, std::span<const Vec3>);

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

double parse_double_field(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || end != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad numeric field '" +
                         std::string(field) + "'");
    return value;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line;
        if (eol == std::string_view::npos) {
            line = text.substr(pos);
            pos = text.size();
        } else {
            line = text.substr(pos, eol - pos);
            pos = eol + 1;
        }
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (line.empty()) continue;
        fn(line, line_no);
    }
}

} // namespace

LayoutTable parse_layout_tsv(std::string_view text) {
    LayoutTable table;
    int dim = 0;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        auto fields = split_tabs(line);
        if (fields.size() < 3 || fields.size() > 4)
            throw ParseError("line " + std::to_string(line_no) +
                             ": layout rows need label + 2 or 3 coordinates");
        int row_dim = static_cast<int>(fields.size()) - 1;
        if (dim == 0)
            dim = row_dim;
        else if (dim != row_dim)
            throw ParseError("line " + std::to_string(line_no) + ": mixed 2D/3D rows");
        std::array<double, 3> p{};
        for (int k = 0; k < row_dim; ++k)
            p[static_cast<std::size_t>(k)] = parse_double_field(fields[k + 1u], line_no);
        table.labels.emplace_back(fields[0]);
        table.pos.push_back(p);
    });
    if (table.labels.empty()) throw ParseError("layout file has no rows");
    table.dim = dim;
    return table;
}

std::string format_community_tsv(const Graph& g, const Dendrogram& d) {
    auto paths = d.leaf_paths(g.node_count());
    std::string out;
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        out += g.labels[i];
        out += '\t';
        out += paths[i];
        out += '\n';
    }
    return out;
}

CommunityTable parse_community_tsv(std::string_view text) {
    CommunityTable table;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        auto fields = split_tabs(line);
        if (fields.size() != 2)
            throw ParseError("line " + std::to_string(line_no) +
                             ": community rows are 'label<TAB>path'");
        table.labels.emplace_back(fields[0]);
        table.paths.emplace_back(fields[1]);
    });
    if (table.labels.empty()) throw ParseError("community file has no rows");
    return table;
}

std::string format_q_trace_csv(std::span<const double> q_trace) {
    std::string out = "merge_step,Q\n";
    for (std::size_t k = 0; k < q_trace.size(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += format_double(q_trace[k]);
        out += '\n';
    }
    return out;
}

std::string format_energy_csv(std::span<const EnergyRow> rows) {
    std::string out = "step,kinetic,spring,coulomb\n";
    for (const auto& r : rows) {
        out += std::to_string(r.step);
        out += ',';
        out += format_double(r.kinetic);
        out += ',';
        out += format_double(r.spring);
        out += ',';
        out += format_double(r.coulomb);
        out += '\n';
    }
    return out;
}

} // namespace netlay
