#include "robustlm/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace robustlm {

namespace {

// splits one CSV record; supports double-quoted fields with "" escapes
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_number(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

}  // namespace

ColumnSelector ColumnSelector::parse(const std::string& text) {
    if (text.empty()) return {};
    bool digits = true;
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
    ColumnSelector sel;
    if (digits)
        sel.index = std::stoi(text);
    else
        sel.name = text;
    return sel;
}

TimeSeries read_series_csv(const std::string& path, const ColumnSelector& column) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");

    std::vector<double> values;
    std::vector<std::size_t> bad_rows;
    int col = column.index;
    bool header_resolved = false;
    bool saw_data = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto fields = split_csv_line(line);

        if (!header_resolved) {
            header_resolved = true;
            // a row whose selected/any field is non-numeric is a header
            bool any_numeric = false;
            double tmp;
            for (const auto& f : fields)
                if (parse_number(f, tmp)) any_numeric = true;
            if (!any_numeric) {
                if (!column.name.empty()) {
                    col = -1;
                    for (std::size_t i = 0; i < fields.size(); ++i)
                        if (trim(fields[i]) == column.name) col = static_cast<int>(i);
                    if (col < 0)
                        throw InputError("column '" + column.name + "' not found in header of '" +
                                         path + "'");
                }
                continue;  // header row consumed
            }
            if (!column.name.empty())
                throw InputError("column '" + column.name + "' requested but '" + path +
                                 "' has no header row");
        }

        saw_data = true;
        if (col >= static_cast<int>(fields.size())) {
            bad_rows.push_back(line_no);
            continue;
        }
        double v;
        if (!parse_number(fields[col], v)) {
            bad_rows.push_back(line_no);
            continue;
        }
        values.push_back(v);
    }
    if (!bad_rows.empty()) {
        std::ostringstream msg;
        msg << "'" << path << "': missing or non-numeric values in column " << col
            << " at line" << (bad_rows.size() > 1 ? "s" : "") << " ";
        for (std::size_t i = 0; i < bad_rows.size() && i < 10; ++i)
            msg << (i ? ", " : "") << bad_rows[i];
        if (bad_rows.size() > 10) msg << ", ... (" << bad_rows.size() << " total)";
        throw InputError(msg.str());
    }
    if (!saw_data || values.empty()) throw InputError("'" + path + "': no data rows");
    TimeSeries series{std::move(values), "file:" + path};
    series.validate();
    return series;
}

void write_series_csv(const std::string& path, const std::vector<double>& values,
                      const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    for (const auto& c : comments) out << "# " << c << "\n";
    char buf[40];
    for (double v : values) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf << "\n";
    }
    if (!out) throw InputError("write failed for '" + path + "'");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
    if (!out) throw InputError("write failed for '" + path + "'");
}

}  // namespace robustlm
