#include "ags/distance.hpp"

#include <algorithm>

namespace ags {

namespace {

constexpr TieOrder kDistanceTieOrder{EditOp::Substitute, EditOp::Delete, EditOp::Insert};

double normalize(double raw, std::size_t nx, std::size_t ny, std::size_t path_length, Normalization mode) {
  const std::size_t denom = mode == Normalization::MaxLength ? std::max(nx, ny) : path_length;
  return denom == 0 ? 0.0 : raw / static_cast<double>(denom);
}

void require_word(const SymbolSeq& w) {
  if (w.empty()) throw ArgumentError("distance: empty word");
}

}  // namespace

std::string_view op_name(EditOp op) {
  switch (op) {
    case EditOp::Substitute:
      return "sub";
    case EditOp::Delete:
      return "del";
    case EditOp::Insert:
      return "ins";
  }
  return "?";
}

DistanceResult distance(std::string_view x, const DialectId& dx, std::string_view y, const DialectId& dy,
                        const EtymologyModel& model, const IndelConfig& costs) {
  const SymbolSeq xs = split_graphemes(x);
  const SymbolSeq ys = split_graphemes(y);
  require_word(xs);
  require_word(ys);

  const Eigen::MatrixXd sub = model.cost_matrix(xs, dx, ys, dy);
  const auto path = min_edit_path<double>(
      sub.rows(), sub.cols(), [&](Eigen::Index i, Eigen::Index j) { return sub(i, j); },
      [&](Eigen::Index) { return costs.deletion; }, [&](Eigen::Index) { return costs.insertion; }, kDistanceTieOrder);

  DistanceResult out;
  out.raw = path.cost;
  out.normalized = normalize(path.cost, xs.size(), ys.size(), path.steps.size(), costs.normalization);
  out.ops.reserve(path.steps.size());
  for (const auto& step : path.steps) {
    EditOperation op{step.op, std::nullopt, std::nullopt, step.cost, std::nullopt};
    if (step.source >= 0) op.x = xs[static_cast<std::size_t>(step.source)];
    if (step.target >= 0) op.y = ys[static_cast<std::size_t>(step.target)];
    if (step.op == EditOp::Substitute) {
      op.best_etymology = model.substitution_cost({*op.x, dx}, {*op.y, dy}).best_etymology;
    }
    out.ops.push_back(std::move(op));
  }
  return out;
}

double normalized_distance(const SymbolSeq& x, const DialectId& dx, const SymbolSeq& y, const DialectId& dy,
                           const EtymologyModel& model, const IndelConfig& costs) {
  require_word(x);
  require_word(y);
  const Eigen::MatrixXd sub = model.cost_matrix(x, dx, y, dy);
  auto s = [&](Eigen::Index i, Eigen::Index j) { return sub(i, j); };
  auto del = [&](Eigen::Index) { return costs.deletion; };
  auto ins = [&](Eigen::Index) { return costs.insertion; };
  if (costs.normalization == Normalization::MaxLength) {
    return normalize(min_edit_cost<double>(sub.rows(), sub.cols(), s, del, ins), x.size(), y.size(), 0,
                     Normalization::MaxLength);
  }
  const auto path = min_edit_path<double>(sub.rows(), sub.cols(), s, del, ins, kDistanceTieOrder);
  return normalize(path.cost, x.size(), y.size(), path.steps.size(), costs.normalization);
}

Eigen::MatrixXd distance_matrix(std::span<const WordInDialect> words, const EtymologyModel& model,
                                const IndelConfig& costs) {
  if (words.empty()) throw ArgumentError("distance_matrix: empty word list");
  std::vector<SymbolSeq> seqs;
  seqs.reserve(words.size());
  for (const auto& w : words) seqs.push_back(split_graphemes(w.word));

  const auto n = static_cast<Eigen::Index>(words.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(j);
      out(i, j) = normalized_distance(seqs[a], words[a].dialect, seqs[b], words[b].dialect, model, costs);
      out(j, i) = out(i, j);
    }
  }
  return out;
}

nlohmann::ordered_json edit_script_json(const WordInDialect& x, const WordInDialect& y, const DistanceResult& result) {
  nlohmann::ordered_json rec;
  rec["x"] = x.word;
  rec["x_dialect"] = x.dialect.code();
  rec["y"] = y.word;
  rec["y_dialect"] = y.dialect.code();
  rec["raw"] = result.raw;
  rec["normalized"] = result.normalized;
  auto ops = nlohmann::ordered_json::array();
  for (const auto& op : result.ops) {
    nlohmann::ordered_json o;
    o["op"] = op_name(op.op);
    o["x"] = op.x ? nlohmann::ordered_json(*op.x) : nlohmann::ordered_json(nullptr);
    o["y"] = op.y ? nlohmann::ordered_json(*op.y) : nlohmann::ordered_json(nullptr);
    o["cost"] = op.cost;
    if (op.best_etymology) {
      o["best_etymology"] = {{"x_et", op.best_etymology->x_et},
                        {"x_ph", op.best_etymology->x_ph},
                        {"y_et", op.best_etymology->y_et},
                        {"y_ph", op.best_etymology->y_ph}};
    }
    ops.push_back(std::move(o));
  }
  rec["ops"] = std::move(ops);
  return rec;
}

}  // namespace ags
