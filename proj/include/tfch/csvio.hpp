#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tfch/diagnostics.hpp"
#include "tfch/errors.hpp"

namespace tfch {

/// Series CSV contract: header "step,t,energy,mass,length_sf,length_energy";
/// doubles printed with %.17g so identical runs diff clean.
inline void write_series_csv(const std::string& path, const TimeSeries& ts) {
    std::ofstream os(path);
    if (!os) throw InputError("csv: cannot open " + path);
    os << "step,t,energy,mass,length_sf,length_energy\n";
    char buf[512];
    for (const SeriesRow& r : ts.rows) {
        std::snprintf(buf, sizeof buf,
                      "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.step, r.t,
                      r.energy_total, r.mass, r.length_sf, r.length_energy);
        os << buf;
    }
    if (!os) throw NumericalError("csv: write failed for " + path);
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // data[col][row]

    const std::vector<double>& column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return data[i];
        throw InputError("csv: no column named \"" + name + "\"");
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("csv: cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(is, line)) throw InputError("csv: empty file " + path);
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
    t.data.resize(t.columns.size());
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::size_t col = 0;
        while (std::getline(ls, cell, ',')) {
            if (col >= t.columns.size())
                throw InputError("csv: too many cells on line " +
                                 std::to_string(lineno));
            try {
                t.data[col].push_back(std::stod(cell));
            } catch (...) {
                throw InputError("csv: bad number \"" + cell + "\" on line " +
                                 std::to_string(lineno));
            }
            ++col;
        }
        if (col != t.columns.size())
            throw InputError("csv: short row on line " +
                             std::to_string(lineno));
    }
    return t;
}

}  // namespace tfch
