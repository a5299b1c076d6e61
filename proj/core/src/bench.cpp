#include "camedit/bench.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "camedit/noise.hpp"

namespace camedit::eval {

namespace {

nlohmann::json psnr_value(double psnr_db) {
    if (std::isinf(psnr_db)) return "inf";
    return psnr_db;
}

nlohmann::json metrics_json(const MetricsReport& m, bool matched = true) {
    if (!matched) return {{"mse", m.mse}, {"psnr_db", psnr_value(m.psnr_db)}, {"precision", nullptr},
                          {"recall", nullptr}, {"f", nullptr}};
    return {{"mse", m.mse},         {"psnr_db", psnr_value(m.psnr_db)}, {"precision", m.precision},
            {"recall", m.recall},   {"f", m.f_measure},                 {"tp", m.tp},
            {"fp", m.fp},           {"fn", m.fn}};
}

std::string number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

BenchReport bench(const std::vector<CorpusEntry>& corpus, const pipeline::PipelineConfig& cfg,
                  const Detector& detector) {
    if (corpus.empty()) throw std::invalid_argument("bench needs a nonempty corpus");
    pipeline::validate(cfg);

    // Images are independent; each task writes its own slot and the reduction runs in corpus order.
    std::vector<std::future<MetricsReport>> tasks;
    tasks.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        tasks.push_back(std::async(std::launch::async, [&, i] {
            const CorpusEntry& entry = corpus[i];
            if (entry.image.width() != entry.ground_truth.width() ||
                entry.image.height() != entry.ground_truth.height()) {
                throw std::invalid_argument(entry.name + ": image and ground truth differ in size");
            }
            MultiChannelImage input = entry.image;
            if (cfg.noise) {
                NoiseSpec spec = *cfg.noise;
                spec.seed.value += i;
                input = add_noise(input, spec);
            }
            return evaluate(detector(input, cfg), entry.ground_truth, cfg.match_tolerance);
        }));
    }
    BenchReport report;
    for (std::size_t i = 0; i < corpus.size(); ++i) report.rows.push_back({corpus[i].name, tasks[i].get(), true});
    report.mean = mean_of(report.rows);
    return report;
}

MetricsReport mean_of(const std::vector<ImageScore>& rows) {
    MetricsReport m;
    if (rows.empty()) return m;
    m.precision = m.recall = m.f_measure = 0.0;
    for (const auto& r : rows) {
        m.mse += r.metrics.mse;
        m.psnr_db += r.metrics.psnr_db;
        m.precision += r.metrics.precision;
        m.recall += r.metrics.recall;
        m.f_measure += r.metrics.f_measure;
        m.tp += r.metrics.tp;
        m.fp += r.metrics.fp;
        m.fn += r.metrics.fn;
    }
    const auto n = static_cast<double>(rows.size());
    m.mse /= n;
    m.psnr_db /= n;
    m.precision /= n;
    m.recall /= n;
    m.f_measure /= n;
    return m;
}

std::string report_json(const BenchReport& report, const ConfigEcho& config) {
    nlohmann::json doc;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [key, value] : config) cfg[key] = value;
    doc["config"] = cfg;
    doc["images"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        auto j = metrics_json(row.metrics, row.matched);
        j["name"] = row.name;
        doc["images"].push_back(j);
    }
    bool all_matched = true;
    for (const auto& row : report.rows) all_matched = all_matched && row.matched;
    doc["mean"] = metrics_json(report.mean, all_matched);
    return doc.dump(2) + "\n";
}

std::string report_csv(const BenchReport& report) {
    std::ostringstream os;
    os << "name,mse,psnr_db,precision,recall,f\n";
    auto line = [&](const std::string& name, const MetricsReport& m, bool matched) {
        os << name << ',' << number(m.mse) << ',' << number(m.psnr_db) << ',';
        if (matched) {
            os << number(m.precision) << ',' << number(m.recall) << ',' << number(m.f_measure);
        } else {
            os << ",,";
        }
        os << '\n';
    };
    bool all_matched = true;
    for (const auto& row : report.rows) {
        line(row.name, row.metrics, row.matched);
        all_matched = all_matched && row.matched;
    }
    line("mean", report.mean, all_matched);
    return os.str();
}

}  // namespace camedit::eval
