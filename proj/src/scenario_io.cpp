#include "rtadapt/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace rtadapt {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string to_string(const Diagnostic& d) {
    std::string kind;
    switch (d.kind) {
        case Diagnostic::Kind::Syntax: kind = "syntax error"; break;
        case Diagnostic::Kind::Schema: kind = "schema error"; break;
        case Diagnostic::Kind::Semantic: kind = "semantic error"; break;
    }
    if (d.where.empty()) return kind + ": " + d.message;
    return kind + " at " + d.where + ": " + d.message;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
    std::string s = "invalid scenario";
    for (const auto& d : diagnostics) s += "\n  " + to_string(d);
    return s;
}

std::string line_column(std::string_view text, std::size_t byte) {
    // nlohmann reports the 1-based count of bytes consumed.
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

// Reads typed fields out of a JSON object and records a schema diagnostic
// (with its JSON path) for every key that is missing, mistyped or unknown.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path, std::vector<Diagnostic>& out)
        : obj_(obj), path_(std::move(path)), out_(out) {}

    void reject_unknown(std::initializer_list<std::string_view> allowed) {
        for (const auto& item : obj_.items()) {
            if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
                error(item.key(), "unknown key");
        }
    }

    std::optional<double> number(std::string_view key, bool required) {
        const json* v = get(key);
        if (!v) {
            if (required) error(key, "missing required number");
            return std::nullopt;
        }
        if (!v->is_number()) {
            error(key, "expected a number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    // Absent key and null both mean "no value"; `ok` is false on a type error.
    std::optional<double> nullable_number(std::string_view key, bool& ok) {
        const json* v = get(key);
        if (!v || v->is_null()) return std::nullopt;
        if (!v->is_number()) {
            error(key, "expected a number or null");
            ok = false;
            return std::nullopt;
        }
        return v->get<double>();
    }

    std::optional<std::string> string(std::string_view key, bool required) {
        const json* v = get(key);
        if (!v) {
            if (required) error(key, "missing required string");
            return std::nullopt;
        }
        if (!v->is_string()) {
            error(key, "expected a string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }

    std::optional<bool> boolean(std::string_view key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_boolean()) {
            error(key, "expected a boolean");
            return std::nullopt;
        }
        return v->get<bool>();
    }

    const json* array(std::string_view key, bool required) {
        const json* v = get(key);
        if (!v) {
            if (required) error(key, "missing required array");
            return nullptr;
        }
        if (!v->is_array()) {
            error(key, "expected an array");
            return nullptr;
        }
        return v;
    }

    void error(std::string_view key, std::string message) {
        out_.push_back({Diagnostic::Kind::Schema, path_ + "." + std::string(key), std::move(message)});
    }

    const std::string& path() const { return path_; }

private:
    const json* get(std::string_view key) const {
        auto it = obj_.find(std::string(key));
        return it == obj_.end() ? nullptr : &*it;
    }

    const json& obj_;
    std::string path_;
    std::vector<Diagnostic>& out_;
};

std::optional<Task> read_task(const json& node, const std::string& path, bool& active,
                              std::vector<Diagnostic>& out) {
    if (!node.is_object()) {
        out.push_back({Diagnostic::Kind::Schema, path, "expected an object"});
        return std::nullopt;
    }
    const std::size_t before = out.size();
    ObjectReader r(node, path, out);
    r.reject_unknown({"name", "class", "c_ms", "t0_ms", "t_min_ms", "t_max_ms", "weight",
                      "fixed_period_ms", "elastic_coeff", "active_at_start"});

    Task t;
    auto name = r.string("name", true);
    auto cls_text = r.string("class", true);
    auto c = r.number("c_ms", true);
    auto t0 = r.number("t0_ms", true);
    bool ok = true;
    t.t_min = r.nullable_number("t_min_ms", ok);
    t.t_max = r.nullable_number("t_max_ms", ok);
    t.fixed_period = r.nullable_number("fixed_period_ms", ok);
    t.elastic_coeff = r.nullable_number("elastic_coeff", ok);
    active = r.boolean("active_at_start").value_or(true);

    std::optional<TaskClass> cls;
    if (cls_text) {
        cls = task_class_from_string(*cls_text);
        if (!cls) r.error("class", "unknown class '" + *cls_text + "'");
    }
    auto weight = r.number("weight", cls && *cls != TaskClass::Hard);

    if (out.size() != before || !ok) return std::nullopt;
    t.name = *name;
    t.cls = *cls;
    t.c = *c;
    t.t0 = *t0;
    t.weight = weight.value_or(1.0);
    return t;
}

std::optional<Event> read_event(const json& node, const std::string& path,
                                std::vector<Diagnostic>& out) {
    if (!node.is_object()) {
        out.push_back({Diagnostic::Kind::Schema, path, "expected an object"});
        return std::nullopt;
    }
    const std::size_t before = out.size();
    ObjectReader r(node, path, out);
    r.reject_unknown({"time_ms", "kind", "task", "period_ms"});

    auto time = r.number("time_ms", true);
    auto kind_text = r.string("kind", true);
    auto task = r.string("task", true);
    std::optional<EventKind> kind;
    if (kind_text) {
        kind = event_kind_from_string(*kind_text);
        if (!kind) r.error("kind", "unknown event kind '" + *kind_text + "'");
    }
    auto period = r.number("period_ms", kind == EventKind::SetFixedPeriod);

    if (out.size() != before) return std::nullopt;
    return Event{*time, *kind, *task, period};
}

}  // namespace

ScenarioError::ScenarioError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        if (auto colon = msg.rfind(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
        throw ScenarioError({{Diagnostic::Kind::Syntax, line_column(text, e.byte), msg}});
    }

    std::vector<Diagnostic> diags;
    if (!doc.is_object()) throw ScenarioError({{Diagnostic::Kind::Schema, "$", "expected an object"}});

    ObjectReader root(doc, "$", diags);
    root.reject_unknown({"u_d", "algorithm", "duration_ms", "sample_interval_ms", "tasks", "events"});
    auto u_d = root.number("u_d", true);
    auto algorithm_text = root.string("algorithm", true);
    auto duration = root.number("duration_ms", true);
    auto interval = root.number("sample_interval_ms", false);

    std::optional<Algorithm> algorithm;
    if (algorithm_text) {
        algorithm = algorithm_from_string(*algorithm_text);
        if (!algorithm) root.error("algorithm", "unknown algorithm '" + *algorithm_text + "'");
    }

    std::vector<Task> tasks;
    std::vector<bool> active;
    if (const json* arr = root.array("tasks", true)) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            bool is_active = true;
            auto t = read_task((*arr)[i], "$.tasks[" + std::to_string(i) + "]", is_active, diags);
            if (t) {
                tasks.push_back(std::move(*t));
                active.push_back(is_active);
            }
        }
    }

    std::vector<Event> events;
    if (const json* arr = root.array("events", false)) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            if (auto e = read_event((*arr)[i], "$.events[" + std::to_string(i) + "]", diags))
                events.push_back(std::move(*e));
        }
    }
    if (!diags.empty()) throw ScenarioError(std::move(diags));

    for (const auto& v : validate(tasks))
        diags.push_back({Diagnostic::Kind::Semantic, v.task, v.message});
    if (!diags.empty()) throw ScenarioError(std::move(diags));

    Scenario sc{TaskSet(std::move(tasks)), std::move(active), std::move(events), *duration, *u_d,
                *algorithm, interval.value_or(1000.0)};
    for (const auto& v : validate_scenario(sc))
        diags.push_back({Diagnostic::Kind::Semantic, v.task, v.message});
    if (!diags.empty()) throw ScenarioError(std::move(diags));
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError({{Diagnostic::Kind::Syntax, path.string(), "cannot open file"}});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string write_scenario(const Scenario& sc) {
    auto optional_number = [](const std::optional<double>& v) -> ordered_json {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };

    ordered_json doc;
    doc["u_d"] = sc.u_d;
    doc["algorithm"] = std::string(to_string(sc.algorithm));
    doc["duration_ms"] = sc.duration_ms;
    doc["sample_interval_ms"] = sc.sample_interval_ms;

    ordered_json tasks = ordered_json::array();
    for (std::size_t i = 0; i < sc.taskset.size(); ++i) {
        const Task& t = sc.taskset[i];
        ordered_json o;
        o["name"] = t.name;
        o["class"] = std::string(to_string(t.cls));
        o["c_ms"] = t.c;
        o["t0_ms"] = t.t0;
        o["t_min_ms"] = optional_number(t.t_min);
        o["t_max_ms"] = optional_number(t.t_max);
        o["weight"] = t.weight;
        o["fixed_period_ms"] = optional_number(t.fixed_period);
        o["elastic_coeff"] = optional_number(t.elastic_coeff);
        o["active_at_start"] = static_cast<bool>(sc.active_at_start[i]);
        tasks.push_back(std::move(o));
    }
    doc["tasks"] = std::move(tasks);

    ordered_json events = ordered_json::array();
    for (const auto& e : sc.events) {
        ordered_json o;
        o["time_ms"] = e.time_ms;
        o["kind"] = std::string(to_string(e.kind));
        o["task"] = e.task;
        if (e.period_ms) o["period_ms"] = *e.period_ms;
        events.push_back(std::move(o));
    }
    doc["events"] = std::move(events);
    return doc.dump(2) + "\n";
}

std::string format_number(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    std::string s = buf;
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

void write_samples_csv(const std::vector<Sample>& samples, std::ostream& os) {
    os << "time_ms,task,completed_count,current_period_ms\n";
    for (const auto& s : samples) {
        os << format_number(s.time_ms) << ',' << s.task << ',' << s.completed_count << ','
           << format_number(s.current_period_ms) << '\n';
    }
}

void write_misses_csv(const std::vector<Miss>& misses, std::ostream& os) {
    os << "time_ms,task,job_release_ms\n";
    for (const auto& m : misses)
        os << format_number(m.time_ms) << ',' << m.task << ',' << format_number(m.job_release_ms) << '\n';
}

void write_adjustments_csv(const std::vector<Adjustment>& adjustments, std::ostream& os) {
    os << "time_ms,verdict,task,period_ms\n";
    for (const auto& a : adjustments) {
        const std::string time = format_number(a.time_ms);
        const std::string verdict = to_string(a.verdict);
        if (a.periods.empty()) {
            os << time << ',' << verdict << ",,\n";
            continue;
        }
        for (const auto& [task, period] : a.periods)
            os << time << ',' << verdict << ',' << task << ',' << format_number(period) << '\n';
    }
}

std::ofstream open_sink(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SinkError("cannot open '" + path.string() + "' for writing");
    return out;
}

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    auto out = open_sink(path);
    writer(out);
    out.flush();
    if (!out) throw SinkError("failed writing '" + path.string() + "'");
}

}  // namespace

void write_trace_csv(const SimTrace& trace, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw SinkError("cannot create directory '" + dir.string() + "': " + ec.message());
    write_file(dir / "samples.csv", [&](std::ostream& os) { write_samples_csv(trace.samples, os); });
    write_file(dir / "misses.csv", [&](std::ostream& os) { write_misses_csv(trace.misses, os); });
    write_file(dir / "adjustments.csv",
               [&](std::ostream& os) { write_adjustments_csv(trace.adjustments, os); });
}

namespace {

void write_periods_csv(const TaskSet& ts, const PeriodTable& periods, std::ostream& os) {
    os << "task,period_ms,utilization\n";
    for (const auto& [task, period] : periods) {
        const Task* t = ts.find(task);
        os << task << ',' << format_number(period) << ',' << format_number(t->c / period) << '\n';
    }
}

ordered_json periods_json(const PeriodTable& periods) {
    ordered_json o = ordered_json::object();
    for (const auto& [task, period] : periods) o[task] = period;
    return o;
}

bool write_infeasible(const Verdict& v, std::ostream& os, AssignmentFormat format) {
    if (v.is_feasible()) return false;
    if (format == AssignmentFormat::Csv) {
        os << "Infeasible," << to_string(*v.reason) << '\n';
    } else {
        ordered_json o;
        o["verdict"] = "Infeasible";
        o["reason"] = std::string(to_string(*v.reason));
        os << o.dump(2) << '\n';
    }
    return true;
}

}  // namespace

void write_assignment(const TaskSet& ts, const PeriodAssignment& pa, std::ostream& os,
                      AssignmentFormat format) {
    if (write_infeasible(pa.verdict, os, format)) return;
    if (format == AssignmentFormat::Csv) {
        write_periods_csv(ts, pa.periods, os);
        return;
    }
    ordered_json o;
    o["verdict"] = "Feasible";
    o["periods"] = periods_json(pa.periods);
    o["passes"] = pa.passes;
    ordered_json log = ordered_json::array();
    for (const auto& c : pa.clamp_log) {
        ordered_json entry;
        entry["pass"] = c.pass;
        entry["task"] = c.task;
        entry["kind"] = std::string(to_string(c.kind));
        log.push_back(std::move(entry));
    }
    o["clamp_log"] = std::move(log);
    o["achieved_utilization"] = pa.achieved_utilization;
    os << o.dump(2) << '\n';
}

void write_assignment(const TaskSet& ts, const ElasticResult& er, std::ostream& os,
                      AssignmentFormat format) {
    if (write_infeasible(er.verdict, os, format)) return;
    if (format == AssignmentFormat::Csv) {
        write_periods_csv(ts, er.periods, os);
        return;
    }
    ordered_json o;
    o["verdict"] = "Feasible";
    o["periods"] = periods_json(er.periods);
    o["iterations"] = er.iterations;
    o["achieved_utilization"] = total_utilization(ts, er.periods);
    os << o.dump(2) << '\n';
}

}  // namespace rtadapt
