#include "cli.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "eigenexpr/classifier.hpp"
#include "eigenexpr/error.hpp"
#include "eigenexpr/evaluation.hpp"
#include "eigenexpr/file_util.hpp"
#include "eigenexpr/image_io.hpp"
#include "eigenexpr/model.hpp"

namespace eigenexpr::cli {
namespace {

constexpr int kLabelWidth = 24;

void print_ed_table(std::ostream& out, const EDMatrix& ed) {
  out << "Euclidean distance (ED) for " << region_label(ed.region) << "\n";
  out << std::left << std::setw(kLabelWidth) << "Training image";
  for (std::size_t k = 0; k < kBasisSize; ++k) out << std::right << std::setw(9) << ("ED" + std::to_string(k + 1));
  out << "\n";
  for (Expression e : kAllExpressions) {
    out << std::left << std::setw(kLabelWidth) << expression_name(e) << std::right << std::fixed
        << std::setprecision(4);
    for (std::size_t k = 0; k < kBasisSize; ++k) out << std::setw(9) << ed.at(e, k);
    out << "\n";
  }
  out.unsetf(std::ios::floatfield);
}

void print_winners(std::ostream& out, const RegionVotes& rv) {
  out << std::left << std::setw(kLabelWidth) << "Result from minimum ED";
  for (Expression w : rv.winners) out << std::right << std::setw(9) << expression_name(w);
  out << "\n";
}

void print_vote_table(std::ostream& out, const ClassificationResult& result) {
  out << "Number of votes for the selected features\n";
  out << std::left << std::setw(kLabelWidth) << "Features";
  for (Expression e : kAllExpressions) out << std::right << std::setw(9) << expression_name(e);
  out << "\n";
  for (const auto& rv : result.votes.regions) {
    out << std::left << std::setw(kLabelWidth) << region_label(rv.region);
    for (Expression e : kAllExpressions) {
      out << std::right << std::setw(9) << result.votes.region_count(rv.region, e);
    }
    out << "\n";
  }
  out << std::left << std::setw(kLabelWidth) << "Total votes";
  for (Expression e : kAllExpressions) out << std::right << std::setw(9) << result.votes.total(e);
  out << "\n";
  out << "Recognized expression: " << expression_name(result.decided);
  if (result.tie_broken) out << " (vote tie broken by distance)";
  out << "\n";
}

int do_train(const std::string& manifest_path, const std::string& out_path, std::ostream& out) {
  const TrainingManifest manifest = load_manifest(manifest_path);
  const ExpressionModel model = train(manifest);
  save_model(model, out_path);
  out << "Trained on " << manifest.entries.size() << " images; model written to " << out_path
      << "\n";
  out << std::left << std::setw(12) << "Expression" << std::setw(11) << "Region";
  for (std::size_t k = 0; k < kBasisSize; ++k) out << std::right << std::setw(13) << ("lambda" + std::to_string(k + 1));
  out << "\n";
  for (Expression e : kAllExpressions) {
    for (RegionKind r : kAllRegions) {
      out << std::left << std::setw(12) << expression_name(e) << std::setw(11) << region_key(r)
          << std::right << std::scientific << std::setprecision(5);
      for (const auto& p : model.basis(e, r).pairs) out << std::setw(13) << p.value;
      out.unsetf(std::ios::floatfield);
      out << "\n";
    }
  }
  return kOk;
}

int do_classify(const std::string& model_path, const std::string& image_path,
                const std::string& crops_path, std::ostream& out) {
  const ExpressionModel model = load_model(model_path);
  const GrayImage image = load_image(image_path);
  const CropSet crops = load_crops(crops_path);
  const ClassificationResult result = classify(image, crops, model);
  for (std::size_t i = 0; i < result.ed_matrices.size(); ++i) {
    print_ed_table(out, result.ed_matrices[i]);
    print_winners(out, result.votes.regions[i]);
    out << "\n";
  }
  print_vote_table(out, result);
  return kOk;
}

int do_votes(const std::string& replay_dir, std::ostream& out) {
  const ClassificationResult result = classify_distances(load_ed_fixtures(replay_dir));
  out << "Winners per eigenvector index\n";
  for (const auto& rv : result.votes.regions) {
    out << std::left << std::setw(kLabelWidth) << region_label(rv.region);
    for (Expression w : rv.winners) out << std::right << std::setw(9) << expression_name(w);
    out << "\n";
  }
  out << "\n";
  print_vote_table(out, result);
  return kOk;
}

int do_eval(const std::string& model_path, const std::string& manifest_path,
            const std::string& report_path, const std::string& train_manifest_path,
            std::ostream& out) {
  const ExpressionModel model = load_model(model_path);
  const TrainingManifest manifest = load_manifest(manifest_path);
  EvalOptions options;
  TrainingManifest training;
  if (!train_manifest_path.empty()) {
    training = load_manifest(train_manifest_path);
    options.training = &training;
  }
  const EvalReport report = evaluate(model, manifest, options);
  write_file_atomic(report_path, render_json(report));
  out << render_text(report);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Facial expression recognition from region eigenvectors", "eigenexpr"};
  app.require_subcommand(1, 1);

  std::string manifest, model_out;
  auto* train_cmd = app.add_subcommand("train", "Build a model from a training manifest");
  train_cmd->add_option("--manifest", manifest, "Training manifest (JSON)")->required();
  train_cmd->add_option("--out", model_out, "Model file to write")->required();

  std::string model_in, image, crops;
  auto* classify_cmd = app.add_subcommand("classify", "Classify one image");
  classify_cmd->add_option("--model", model_in, "Model file")->required();
  classify_cmd->add_option("--image", image, "Image (PNG, JPEG or plain-text grayscale)")->required();
  classify_cmd->add_option("--crops", crops, "Crop rectangles (JSON)")->required();

  std::string replay;
  auto* votes_cmd = app.add_subcommand("votes", "Vote on raw ED grids");
  votes_cmd->add_option("--replay", replay, "Directory of <region>.txt ED fixtures")->required();

  std::string eval_model, eval_manifest, report, train_manifest;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a labelled manifest");
  eval_cmd->add_option("--model", eval_model, "Model file")->required();
  eval_cmd->add_option("--manifest", eval_manifest, "Test manifest (JSON)")->required();
  eval_cmd->add_option("--report", report, "Report file to write (JSON)")->required();
  eval_cmd->add_option("--train-manifest", train_manifest,
                       "Training manifest, to report train/test overlap");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (*train_cmd) return do_train(manifest, model_out, out);
    if (*classify_cmd) return do_classify(model_in, image, crops, out);
    if (*votes_cmd) return do_votes(replay, out);
    if (*eval_cmd) return do_eval(eval_model, eval_manifest, report, train_manifest, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}

}  // namespace eigenexpr::cli
