#include "oggn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "oggn/errors.hpp"
#include "oggn/log.hpp"
#include "oggn/rng.hpp"

namespace oggn {

using nlohmann::json;

namespace {

constexpr double kDegenerateStd = 1e-12;

void fit_standardizer(const Matrix& columns, std::vector<double>& mean,
                      std::vector<double>& scale) {
    const std::size_t n = columns.rows();
    const std::size_t d = columns.cols();
    mean.assign(d, 0.0);
    scale.assign(d, 1.0);
    if (n == 0) return;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) mean[j] += columns(i, j);
    for (double& m : mean) m /= static_cast<double>(n);
    std::vector<double> var(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = columns(i, j) - mean[j];
            var[j] += diff * diff;
        }
    for (std::size_t j = 0; j < d; ++j) {
        const double sd = std::sqrt(var[j] / static_cast<double>(n));
        scale[j] = sd < kDegenerateStd ? 1.0 : sd;
    }
}

} // namespace

OracleModel train_oracle(const Dataset& train, const OracleTrainConfig& cfg,
                         OracleTrainReport* report) {
    if (train.size() == 0) throw ShapeError("train_oracle: empty dataset");
    if (cfg.epochs == 0) throw ConfigError("train_oracle: zero epochs");
    const std::size_t n = train.size();
    const std::size_t d = train.features.cols();

    OracleModel model;
    fit_standardizer(train.features, model.feature_mean, model.feature_scale);
    std::vector<double> t_mean, t_scale;
    fit_standardizer(train.targets, t_mean, t_scale);
    model.target_mean = t_mean[0];
    model.target_scale = t_scale[0];

    Matrix x(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            x(i, j) = (train.features(i, j) - model.feature_mean[j]) / model.feature_scale[j];
    Matrix y(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        y(i, 0) = (train.targets(i, 0) - model.target_mean) / model.target_scale;

    std::vector<std::size_t> sizes{d};
    sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
    sizes.push_back(1);
    std::vector<Activation> acts(cfg.hidden.size(), cfg.activation);
    acts.push_back(Activation::Identity);
    model.net = init_network(sizes, acts, derive_seed(cfg.seed, "oracle-init"));

    AdamState adam(model.net, cfg.adam);
    Rng shuffle_rng(derive_seed(cfg.seed, "oracle-shuffle"));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const std::size_t batch = std::min(std::max<std::size_t>(cfg.batch, 1), n);

    if (report) *report = {};
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        adam.config().lr = scheduled_lr(cfg.adam.lr, cfg.schedule, epoch, cfg.epochs);
        // Fisher-Yates with the library generator so runs stay reproducible.
        for (std::size_t i = n - 1; i > 0; --i)
            std::swap(order[i], order[shuffle_rng.below(i + 1)]);

        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < n; start += batch) {
            const std::size_t count = std::min(batch, n - start);
            Matrix xb(count, d);
            Matrix yb(count, 1);
            for (std::size_t r = 0; r < count; ++r) {
                const std::size_t src = order[start + r];
                std::copy_n(x.data() + src * d, d, xb.data() + r * d);
                yb(r, 0) = y(src, 0);
            }
            ForwardCache cache;
            const Matrix pred = forward(model.net, xb, &cache);
            const LossResult loss = mse_loss(pred, yb);
            const BackwardResult back = backward(model.net, cache, loss.d_pred);
            adam_step(model.net, back.grads, adam);
            epoch_loss += loss.value;
            ++batches;
        }
        epoch_loss /= static_cast<double>(batches);
        if (!std::isfinite(epoch_loss))
            throw TrainingError("oracle training diverged at epoch " + std::to_string(epoch));
        if (report) report->loss_history.push_back(epoch_loss);
        if (log_level() >= LogLevel::Debug && (epoch % 20 == 0 || epoch + 1 == cfg.epochs))
            log_debug("oracle epoch " + std::to_string(epoch) + " loss " +
                      std::to_string(epoch_loss));
    }
    if (report && !report->loss_history.empty())
        report->final_train_mse = report->loss_history.back();
    return model;
}

OracleEval oracle_value_and_grad(const OracleModel& model, std::span<const double> x) {
    const std::size_t d = model.input_dim();
    if (x.size() != d)
        throw ShapeError("oracle_value_and_grad: got " + std::to_string(x.size()) +
                         " features, model expects " + std::to_string(d));
    Matrix input(1, d);
    for (std::size_t j = 0; j < d; ++j)
        input(0, j) = (x[j] - model.feature_mean[j]) / model.feature_scale[j];
    ForwardCache cache;
    const Matrix pred = forward(model.net, input, &cache);

    Matrix d_out(1, 1);
    d_out(0, 0) = 1.0;
    const BackwardResult back = backward(model.net, cache, d_out);

    OracleEval eval;
    eval.value = pred(0, 0) * model.target_scale + model.target_mean;
    eval.grad.resize(d);
    // Chain through both standardizations: value = net(z)·t_scale + t_mean,
    // z_j = (x_j − μ_j)/σ_j  ⇒  dvalue/dx_j = t_scale · dnet/dz_j / σ_j.
    for (std::size_t j = 0; j < d; ++j)
        eval.grad[j] = model.target_scale * back.d_input(0, j) / model.feature_scale[j];
    return eval;
}

Matrix oracle_predict(const OracleModel& model, const Matrix& features) {
    const std::size_t d = model.input_dim();
    if (features.cols() != d)
        throw ShapeError("oracle_predict: feature width " + std::to_string(features.cols()) +
                         " does not match model input " + std::to_string(d));
    Matrix z(features.rows(), d);
    for (std::size_t i = 0; i < features.rows(); ++i)
        for (std::size_t j = 0; j < d; ++j)
            z(i, j) = (features(i, j) - model.feature_mean[j]) / model.feature_scale[j];
    Matrix pred = forward(model.net, z);
    for (double& v : pred.values()) v = v * model.target_scale + model.target_mean;
    return pred;
}

OracleMetrics evaluate_oracle(const OracleModel& model, const Dataset& ds) {
    if (ds.size() == 0) throw ShapeError("evaluate_oracle: empty dataset");
    const Matrix pred = oracle_predict(model, ds.features);
    OracleMetrics m;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const double err = pred(i, 0) - ds.targets(i, 0);
        m.mse += err * err;
        const double rel = std::abs(err) / std::max(std::abs(ds.targets(i, 0)), 1e-9);
        m.mean_rel_err += rel;
        m.max_rel_err = std::max(m.max_rel_err, rel);
    }
    m.mse /= static_cast<double>(ds.size());
    m.mean_rel_err /= static_cast<double>(ds.size());
    return m;
}

void save_oracle(const OracleModel& model, const std::filesystem::path& path) {
    json j;
    j["format_version"] = 1;
    j["kind"] = "oracle";
    j["layer_sizes"] = model.net.layer_sizes;
    json acts = json::array();
    for (Activation a : model.net.activations) acts.push_back(activation_name(a));
    j["activations"] = std::move(acts);
    json weights = json::array();
    for (const Matrix& w : model.net.weights) weights.push_back(w.values());
    j["weights"] = std::move(weights);
    j["biases"] = model.net.biases;
    j["seed"] = model.net.seed;
    j["feature_mean"] = model.feature_mean;
    j["feature_scale"] = model.feature_scale;
    j["target_mean"] = model.target_mean;
    j["target_scale"] = model.target_scale;
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

OracleModel load_oracle(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    try {
        if (j.value("format_version", 0) != 1)
            throw ParseError(path.string() + ": unsupported format_version");
        OracleModel model;
        model.net.layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
        for (const auto& name : j.at("activations"))
            model.net.activations.push_back(activation_from_name(name.get<std::string>()));
        model.net.biases = j.at("biases").get<std::vector<std::vector<double>>>();
        for (std::size_t l = 0; l + 1 < model.net.layer_sizes.size(); ++l) {
            Matrix w(model.net.layer_sizes[l], model.net.layer_sizes[l + 1]);
            auto values = j.at("weights").at(l).get<std::vector<double>>();
            if (values.size() != w.size())
                throw ParseError(path.string() + ": weight layer " + std::to_string(l) +
                                 " size mismatch");
            w.values() = std::move(values);
            model.net.weights.push_back(std::move(w));
        }
        model.net.seed = j.value("seed", std::uint64_t{0});
        model.feature_mean = j.at("feature_mean").get<std::vector<double>>();
        model.feature_scale = j.at("feature_scale").get<std::vector<double>>();
        model.target_mean = j.at("target_mean").get<double>();
        model.target_scale = j.at("target_scale").get<double>();
        if (model.feature_mean.size() != model.input_dim() ||
            model.feature_scale.size() != model.input_dim())
            throw ParseError(path.string() + ": standardization width mismatch");
        return model;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

Oracle Oracle::neural(OracleModel model) { return Oracle{{std::move(model)}}; }
Oracle Oracle::analytic(PolyFunction f) { return Oracle{{std::move(f)}}; }
Oracle Oracle::residual(PolySystem s) {
    if (s.equations.empty()) throw ConfigError("residual oracle over an empty system");
    return Oracle{{std::move(s)}};
}

std::size_t Oracle::input_dim() const {
    if (const auto* m = std::get_if<OracleModel>(&impl_)) return m->input_dim();
    if (const auto* f = std::get_if<PolyFunction>(&impl_)) return f->n_vars;
    return std::get<PolySystem>(impl_).n_vars;
}

OracleEval Oracle::value_and_grad(std::span<const double> x) const {
    if (const auto* m = std::get_if<OracleModel>(&impl_)) return oracle_value_and_grad(*m, x);
    if (const auto* f = std::get_if<PolyFunction>(&impl_))
        return {poly_eval(*f, x), poly_grad(*f, x)};

    // Residual norm r = sqrt(sum f_k^2); dr/dx = (sum f_k ∇f_k)/r. All
    // residuals vanish exactly when r = 0, so the zero gradient there is exact.
    const PolySystem& sys = std::get<PolySystem>(impl_);
    OracleEval eval;
    eval.grad.assign(sys.n_vars, 0.0);
    double sum_sq = 0.0;
    for (const PolyFunction& eq : sys.equations) {
        const double fk = poly_eval(eq, x);
        sum_sq += fk * fk;
        const auto gk = poly_grad(eq, x);
        for (std::size_t j = 0; j < sys.n_vars; ++j) eval.grad[j] += fk * gk[j];
    }
    eval.value = std::sqrt(sum_sq);
    if (eval.value > 0.0)
        for (double& g : eval.grad) g /= eval.value;
    else
        std::fill(eval.grad.begin(), eval.grad.end(), 0.0);
    return eval;
}

const OracleModel* Oracle::neural_model() const { return std::get_if<OracleModel>(&impl_); }
const PolyFunction* Oracle::analytic_function() const { return std::get_if<PolyFunction>(&impl_); }
const PolySystem* Oracle::system() const { return std::get_if<PolySystem>(&impl_); }

std::vector<bool> Oracle::required_nonnegative() const {
    if (const auto* f = std::get_if<PolyFunction>(&impl_)) return fractional_exponent_vars(*f);
    if (const auto* s = std::get_if<PolySystem>(&impl_)) return fractional_exponent_vars(*s);
    return std::vector<bool>(input_dim(), false);
}

Oracle resolve_oracle(const std::string& ref) {
    if (ref == "poly4") return Oracle::analytic(poly4());
    if (!std::filesystem::exists(ref))
        throw ConfigError("oracle '" + ref + "': not a built-in id and no such file");
    std::ifstream in(ref);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ref + ": " + std::string(e.what()));
    }
    if (j.contains("weights")) return Oracle::neural(load_oracle(ref));
    if (j.contains("terms")) return Oracle::analytic(load_poly(ref));
    throw ParseError(ref + ": neither a model file nor a function file");
}

} // namespace oggn
