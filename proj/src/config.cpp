#include "adsel/config.hpp"

#include <fstream>
#include <set>

namespace adsel {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& key) {
    if (!j.at(key).is_number())
        throw ParseError("config key \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {
        "lambda", "alpha", "beta", "mu", "delta", "q", "sigma", "epsilon",
        "epsilon_div", "max_iter", "tol", "seed", "ablation",
        "missing_ratios", "n_repeats", "train_fraction", "budget",
        "binarization_threshold", "hyper_grid", "mlknn_k", "mlknn_s",
        "mlknn_train_on_masked", "normalize", "threads"};

    if (!j.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw ParseError("unknown config key: " + key);

    ExperimentConfig cfg;
    Hyperparams& hp = cfg.hyper;

    if (j.contains("lambda")) hp.lambda = get_number(j, "lambda");
    if (j.contains("alpha")) hp.alpha = get_number(j, "alpha");
    if (j.contains("beta")) hp.beta = get_number(j, "beta");
    if (j.contains("mu")) hp.mu = get_number(j, "mu");
    if (j.contains("delta")) hp.delta = get_number(j, "delta");
    if (j.contains("q")) hp.q = j.at("q").get<int>();
    if (j.contains("sigma")) {
        const auto& s = j.at("sigma");
        if (s.is_string()) {
            if (s.get<std::string>() != "auto")
                throw ParseError("sigma must be a number or \"auto\"");
            hp.sigma = 0.0;
        } else {
            hp.sigma = get_number(j, "sigma");
        }
    }
    if (j.contains("epsilon")) hp.epsilon = get_number(j, "epsilon");
    if (j.contains("epsilon_div")) hp.epsilon_div = get_number(j, "epsilon_div");
    if (j.contains("max_iter")) hp.max_iter = j.at("max_iter").get<int>();
    if (j.contains("tol")) hp.tol = get_number(j, "tol");
    if (j.contains("seed")) {
        hp.seed = j.at("seed").get<std::uint64_t>();
        cfg.seed = hp.seed;
    }
    if (j.contains("ablation"))
        hp.ablation = ablation_from_string(j.at("ablation").get<std::string>());

    if (j.contains("missing_ratios"))
        cfg.missing_ratios = j.at("missing_ratios").get<std::vector<double>>();
    if (j.contains("n_repeats")) cfg.n_repeats = j.at("n_repeats").get<int>();
    if (j.contains("train_fraction")) cfg.train_fraction = get_number(j, "train_fraction");
    if (j.contains("budget")) cfg.budget_fraction = get_number(j, "budget");
    if (j.contains("binarization_threshold"))
        cfg.binarization_threshold = get_number(j, "binarization_threshold");
    if (j.contains("hyper_grid"))
        cfg.hyper_grid =
            j.at("hyper_grid").get<std::map<std::string, std::vector<double>>>();
    if (j.contains("mlknn_k")) cfg.mlknn_k = j.at("mlknn_k").get<int>();
    if (j.contains("mlknn_s")) cfg.mlknn_s = get_number(j, "mlknn_s");
    if (j.contains("mlknn_train_on_masked"))
        cfg.mlknn_train_on_masked = j.at("mlknn_train_on_masked").get<bool>();
    if (j.contains("normalize")) {
        const auto mode = j.at("normalize").get<std::string>();
        if (mode == "zscore") cfg.normalize = NormalizeMode::zscore;
        else if (mode == "none") cfg.normalize = NormalizeMode::none;
        else throw ParseError("normalize must be \"zscore\" or \"none\"");
    }
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();

    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config parse error in " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

nlohmann::json hyperparams_to_json(const Hyperparams& hp) {
    return json{{"lambda", hp.lambda},
                {"alpha", hp.alpha},
                {"beta", hp.beta},
                {"mu", hp.mu},
                {"delta", hp.delta},
                {"q", hp.q},
                {"sigma", hp.sigma <= 0.0 ? json("auto") : json(hp.sigma)},
                {"epsilon", hp.epsilon},
                {"epsilon_div", hp.epsilon_div},
                {"max_iter", hp.max_iter},
                {"tol", hp.tol},
                {"seed", hp.seed},
                {"ablation", to_string(hp.ablation)}};
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    json j = hyperparams_to_json(cfg.hyper);
    j["missing_ratios"] = cfg.missing_ratios;
    j["n_repeats"] = cfg.n_repeats;
    j["train_fraction"] = cfg.train_fraction;
    j["budget"] = cfg.budget_fraction;
    j["binarization_threshold"] = cfg.binarization_threshold;
    if (!cfg.hyper_grid.empty()) j["hyper_grid"] = cfg.hyper_grid;
    j["mlknn_k"] = cfg.mlknn_k;
    j["mlknn_s"] = cfg.mlknn_s;
    j["mlknn_train_on_masked"] = cfg.mlknn_train_on_masked;
    j["normalize"] = cfg.normalize == NormalizeMode::zscore ? "zscore" : "none";
    j["threads"] = cfg.threads;
    return j;
}

}  // namespace adsel
