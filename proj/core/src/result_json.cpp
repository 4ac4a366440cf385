#include "wnrank/result_json.hpp"

#include <sstream>

#include <json.hpp>

#include "wnrank/csv.hpp"

namespace wnrank {

namespace {

using nlohmann::json;

json outcome_to_json(const TestOutcome& t) {
    return json{{"type", "test_outcome"},
                {"method", method_name(t.method)},
                {"alpha", t.alpha},
                {"statistic", t.statistic},
                {"threshold", t.threshold},
                {"p_value", t.p_value},
                {"reject", t.reject},
                {"argmax", {{"i", t.argmax_i + 1}, {"j", t.argmax_j + 1}, {"k", t.argmax_k}}},
                {"n", t.n},
                {"p", t.p},
                {"K", t.K},
                {"law",
                 {{"mu1", t.law.mu1},
                  {"kappa", t.law.kappa},
                  {"lambda1", t.law.lambda1},
                  {"capital_lambda", t.law.capital_lambda}}},
                {"permutations", t.permutations},
                {"L", t.L}};
}

TestOutcome outcome_from_json(const json& j) {
    TestOutcome t;
    t.method = method_from_name(j.at("method").get<std::string>());
    t.alpha = j.at("alpha").get<double>();
    t.statistic = j.at("statistic").get<double>();
    t.threshold = j.at("threshold").get<double>();
    t.p_value = j.at("p_value").get<double>();
    t.reject = j.at("reject").get<bool>();
    t.argmax_i = j.at("argmax").at("i").get<int>() - 1;
    t.argmax_j = j.at("argmax").at("j").get<int>() - 1;
    t.argmax_k = j.at("argmax").at("k").get<int>();
    t.n = j.at("n").get<int>();
    t.p = j.at("p").get<int>();
    t.K = j.at("K").get<int>();
    t.law.mu1 = j.at("law").at("mu1").get<int>();
    t.law.kappa = j.at("law").at("kappa").get<double>();
    t.law.lambda1 = j.at("law").at("lambda1").get<double>();
    t.law.capital_lambda = j.at("law").at("capital_lambda").get<double>();
    t.permutations = j.at("permutations").get<int>();
    t.L = j.at("L").get<int>();
    return t;
}

json table_to_json(const McTable& table) {
    json cells = json::array();
    for (const McCell& c : table.cells) {
        cells.push_back(json{{"model", c.model},
                             {"method", c.method},
                             {"n", c.n},
                             {"p", c.p},
                             {"K", c.K},
                             {"rho", c.rho},
                             {"k0", c.k0},
                             {"L", c.L},
                             {"B", c.B},
                             {"reps", c.reps},
                             {"rejections", c.rejections},
                             {"failed", c.failed},
                             {"rate", c.rate},
                             {"mc_se", c.mc_se},
                             {"partial", c.partial}});
    }
    return json{{"type", "mc_table"},
                {"base_seed", table.base_seed},
                {"alpha", table.alpha},
                {"wall_seconds", table.wall_seconds},
                {"cells", std::move(cells)}};
}

McTable table_from_json(const json& j) {
    McTable table;
    table.base_seed = j.at("base_seed").get<std::uint64_t>();
    table.alpha = j.at("alpha").get<double>();
    table.wall_seconds = j.at("wall_seconds").get<double>();
    for (const json& cj : j.at("cells")) {
        McCell c;
        c.model = cj.at("model").get<std::string>();
        c.method = cj.at("method").get<std::string>();
        c.n = cj.at("n").get<int>();
        c.p = cj.at("p").get<int>();
        c.K = cj.at("K").get<int>();
        c.rho = cj.at("rho").get<double>();
        c.k0 = cj.at("k0").get<int>();
        c.L = cj.at("L").get<int>();
        c.B = cj.at("B").get<int>();
        c.reps = cj.at("reps").get<int>();
        c.rejections = cj.at("rejections").get<int>();
        c.failed = cj.at("failed").get<int>();
        c.rate = cj.at("rate").get<double>();
        c.mc_se = cj.at("mc_se").get<double>();
        c.partial = cj.at("partial").get<bool>();
        table.cells.push_back(std::move(c));
    }
    return table;
}

}  // namespace

std::string to_json(const ResultDocument& doc) {
    json command = json::object();
    for (const auto& [key, value] : doc.command) command[key] = value;
    json j{{"schema_version", doc.schema_version},
           {"command", std::move(command)},
           {"warnings", doc.warnings},
           {"timing_seconds", doc.timing_seconds}};
    if (std::holds_alternative<TestOutcome>(doc.outcome)) {
        j["outcome"] = outcome_to_json(std::get<TestOutcome>(doc.outcome));
        if (!doc.argmax_i_label.empty()) {
            j["outcome"]["argmax"]["i_label"] = doc.argmax_i_label;
            j["outcome"]["argmax"]["j_label"] = doc.argmax_j_label;
        }
    } else {
        j["outcome"] = table_to_json(std::get<McTable>(doc.outcome));
    }
    return j.dump(2);
}

ResultDocument result_document_from_json(const std::string& text) {
    const json j = json::parse(text);
    ResultDocument doc;
    doc.schema_version = j.at("schema_version").get<std::string>();
    for (const auto& [key, value] : j.at("command").items()) {
        doc.command.emplace_back(key, value.get<std::string>());
    }
    doc.warnings = j.at("warnings").get<std::vector<std::string>>();
    doc.timing_seconds = j.at("timing_seconds").get<double>();
    const json& out = j.at("outcome");
    if (out.at("type").get<std::string>() == "test_outcome") {
        doc.outcome = outcome_from_json(out);
        if (out.at("argmax").contains("i_label")) {
            doc.argmax_i_label = out.at("argmax").at("i_label").get<std::string>();
            doc.argmax_j_label = out.at("argmax").at("j_label").get<std::string>();
        }
    } else {
        doc.outcome = table_from_json(out);
    }
    return doc;
}

std::string to_csv(const ResultDocument& doc) {
    std::ostringstream out;
    if (std::holds_alternative<TestOutcome>(doc.outcome)) {
        const TestOutcome& t = std::get<TestOutcome>(doc.outcome);
        out << "method,n,p,K,alpha,statistic,threshold,p_value,reject,argmax_i,argmax_j,"
               "argmax_k,L,permutations\n";
        out << method_name(t.method) << ',' << t.n << ',' << t.p << ',' << t.K << ','
            << format_double(t.alpha) << ',' << format_double(t.statistic) << ','
            << format_double(t.threshold) << ',' << format_double(t.p_value) << ','
            << (t.reject ? 1 : 0) << ',' << (t.argmax_i + 1) << ',' << (t.argmax_j + 1) << ','
            << t.argmax_k << ',' << t.L << ',' << t.permutations << '\n';
    } else {
        const McTable& table = std::get<McTable>(doc.outcome);
        out << "model,method,n,p,K,rho,k0,L,B,reps,rejections,failed,rate,mc_se,partial\n";
        for (const McCell& c : table.cells) {
            out << c.model << ',' << c.method << ',' << c.n << ',' << c.p << ',' << c.K << ','
                << format_double(c.rho) << ',' << c.k0 << ',' << c.L << ',' << c.B << ','
                << c.reps << ',' << c.rejections << ',' << c.failed << ','
                << format_double(c.rate) << ',' << format_double(c.mc_se) << ','
                << (c.partial ? 1 : 0) << '\n';
        }
    }
    return out.str();
}

}  // namespace wnrank
