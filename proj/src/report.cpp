#include "pathlab/report.hpp"

#include <json.hpp>

#include <sstream>

#include "pathlab/errors.hpp"

namespace pathlab {

int SuiteReport::passes() const {
    int n = 0;
    for (const auto& r : records) n += r.verdict == "pass";
    return n;
}

int SuiteReport::failures() const {
    int n = 0;
    for (const auto& r : records) n += r.verdict == "fail";
    return n;
}

std::string SuiteReport::canonical() const {
    std::ostringstream os;
    os << suite << '\x1f' << seed << '\n';
    for (const auto& r : records) {
        os << r.id << '\x1f' << r.config << '\x1f' << r.verdict << '\x1f';
        if (r.metric) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", *r.metric);
            os << buf;
        }
        os << '\x1f' << r.detail << '\n';
    }
    return os.str();
}

std::string export_report_json(const SuiteReport& r) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["threads"] = r.threads;
    j["version"] = r.version;
    j["summary"] = {{"cases", r.records.size()}, {"passes", r.passes()}, {"failures", r.failures()}};
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& c : r.records) {
        nlohmann::json jc = {{"id", c.id},
                             {"config", c.config},
                             {"verdict", c.verdict},
                             {"detail", c.detail},
                             {"wall_ms", c.wall_ms}};
        if (c.metric) jc["metric"] = *c.metric;
        recs.push_back(std::move(jc));
    }
    j["records"] = std::move(recs);
    return j.dump(2) + "\n";
}

SuiteReport import_report_json(const std::string& bytes) {
    nlohmann::json j = nlohmann::json::parse(bytes);
    SuiteReport r;
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.threads = j.at("threads").get<int>();
    r.version = j.at("version").get<std::string>();
    for (const auto& jc : j.at("records")) {
        CaseRecord c;
        c.id = jc.at("id").get<std::string>();
        c.config = jc.at("config").get<std::string>();
        c.verdict = jc.at("verdict").get<std::string>();
        c.detail = jc.at("detail").get<std::string>();
        c.wall_ms = jc.at("wall_ms").get<double>();
        if (jc.contains("metric")) c.metric = jc.at("metric").get<double>();
        r.records.push_back(std::move(c));
    }
    return r;
}

namespace {

std::string csv_quote(const std::string& s) {
    bool need = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!need) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string export_report_csv(const SuiteReport& r) {
    std::ostringstream os;
    os << "suite,id,config,verdict,metric,detail,wall_ms\r\n";
    for (const auto& c : r.records) {
        os << csv_quote(r.suite) << ',' << csv_quote(c.id) << ',' << csv_quote(c.config) << ','
           << csv_quote(c.verdict) << ',';
        if (c.metric) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", *c.metric);
            os << buf;
        }
        os << ',' << csv_quote(c.detail) << ',' << c.wall_ms << "\r\n";
    }
    return os.str();
}

std::string export_report_markdown(const SuiteReport& r) {
    std::ostringstream os;
    os << "# " << r.suite << "\n\n";
    os << "seed " << r.seed << ", " << r.threads << " thread(s), " << r.records.size()
       << " case(s), " << r.passes() << " pass, " << r.failures() << " fail\n\n";
    os << "| case | config | verdict | metric | detail |\n";
    os << "|---|---|---|---|---|\n";
    auto cell = [](std::string s) {
        for (auto& c : s)
            if (c == '|') c = '/';
        return s;
    };
    for (const auto& c : r.records) {
        os << "| " << cell(c.id) << " | " << cell(c.config) << " | " << c.verdict << " | ";
        if (c.metric) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%g", *c.metric);
            os << buf;
        }
        os << " | " << cell(c.detail) << " |\n";
    }
    return os.str();
}

std::string export_report(const SuiteReport& r, const std::string& fmt) {
    if (fmt == "json") return export_report_json(r);
    if (fmt == "csv") return export_report_csv(r);
    if (fmt == "markdown" || fmt == "md") return export_report_markdown(r);
    throw InvalidParams("unknown report format: " + fmt);
}

}  // namespace pathlab
