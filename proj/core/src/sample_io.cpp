#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "lagfpt/errors.hpp"
#include "lagfpt/sampling.hpp"

namespace lagfpt {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

FptSample read_sample(std::istream& in) {
    std::vector<double> times;
    SampleMeta meta;
    meta.source = SampleSource::File;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '#') {
            meta.header.emplace_back(trim(text.substr(1)));
            continue;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw SampleIoError("line " + std::to_string(line_no) + ": not a number: '" + std::string(text) + "'");
        if (!(value > 0.0) || !std::isfinite(value))
            throw SampleIoError("line " + std::to_string(line_no) + ": FPT must be positive");
        times.push_back(value);
    }
    if (in.bad()) throw SampleIoError("read failure");
    if (times.empty()) throw SampleIoError("sample contains no observations");
    return FptSample(std::move(times), std::move(meta));
}

FptSample read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SampleIoError("cannot open sample file '" + path + "'");
    return read_sample(in);
}

void write_sample(std::ostream& out, const FptSample& sample, std::span<const std::string> header) {
    for (const auto& h : header) out << "# " << h << '\n';
    char buf[32];
    for (double t : sample.times()) {
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t);
        out.write(buf, ptr - buf);
        out.put('\n');
    }
    if (!out) throw SampleIoError("write failure");
}

}  // namespace lagfpt
