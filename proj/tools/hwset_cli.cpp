// Copyright 2026 The hwset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hwset: command-line front end for building a handwritten word dataset.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <set>

#include "hwset/assembly.hpp"
#include "hwset/config.hpp"
#include "hwset/curation.hpp"
#include "hwset/error.hpp"
#include "hwset/metrics.hpp"
#include "hwset/ocr_gate.hpp"
#include "hwset/png_io.hpp"
#include "hwset/segmentation.hpp"
#include "hwset/synth.hpp"
#include "hwset/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace hwset;

namespace {

enum class Level { Debug, Info, Warn, Error };
Level g_level = Level::Info;

Level parse_level(const std::string& s) {
  if (s == "debug") return Level::Debug;
  if (s == "info") return Level::Info;
  if (s == "warn") return Level::Warn;
  if (s == "error") return Level::Error;
  throw Error(ErrorCode::ConfigError, "log level must be debug, info, warn or error");
}

void log(Level level, const std::string& msg) {
  static const char* names[] = {"debug", "info", "warn", "error"};
  if (level < g_level) return;
  std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string log_level;
  std::string ocr_backend;
  std::string ocr_endpoint;
  std::string ocr_table;
};

// Precedence: defaults < config file < environment < flags.
RunConfig resolve_config(const Globals& g) {
  RunConfig cfg = g.config_path.empty() ? RunConfig{} : load_run_config(g.config_path);
  if (const char* env = std::getenv("HWSET_JOBS")) {
    try {
      cfg.jobs = std::stoi(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "HWSET_JOBS is not an integer");
    }
  }
  if (const char* env = std::getenv("HWSET_OCR_ENDPOINT")) cfg.ocr.endpoint = env;
  if (g.seed) cfg.seed = *g.seed;
  if (g.jobs) cfg.jobs = *g.jobs;
  if (!g.log_level.empty()) cfg.log_level = g.log_level;
  if (!g.ocr_backend.empty()) cfg.ocr.backend = g.ocr_backend;
  if (!g.ocr_endpoint.empty()) cfg.ocr.endpoint = g.ocr_endpoint;
  if (!g.ocr_table.empty()) cfg.ocr.table = g.ocr_table;
  if (cfg.jobs < 0) throw Error(ErrorCode::ConfigError, "jobs must be >= 0");
  g_level = parse_level(cfg.log_level);
  cfg.pipeline.validate();
  return cfg;
}

ExecPolicy policy_for(const RunConfig& cfg) {
  return cfg.jobs == 1 ? ExecPolicy::serial() : ExecPolicy::parallel(cfg.jobs);
}

ordered_json provenance(const RunConfig& cfg) {
  return ordered_json{
      {"tool_version", tool_version()}, {"config_hash", config_hash(cfg.pipeline)}, {"seed", cfg.seed}};
}

ManifestMeta meta_for(const RunConfig& cfg, const std::string& source, const std::string& stage) {
  return ManifestMeta{source, stage, config_hash(cfg.pipeline), cfg.seed, tool_version()};
}

void write_report(const fs::path& path, ordered_json body, const RunConfig& cfg) {
  ordered_json out = provenance(cfg);
  for (auto& [k, v] : body.items()) out[k] = v;
  write_json_atomic(path, out);
  log(Level::Info, "wrote " + path.string());
}

// ---- segment -------------------------------------------------------------

struct SegmentArgs {
  std::string corpus;
  std::string out;
};

int run_segment(const RunConfig& cfg, const SegmentArgs& a) {
  const auto lines = read_corpus(a.corpus);
  if (lines.empty()) throw Error(ErrorCode::EmptyCorpus, a.corpus + " has no lines");
  const auto outcomes = segment_corpus(lines, cfg.pipeline, policy_for(cfg));

  const fs::path out_dir(a.out);
  fs::create_directories(out_dir / "crops");
  Manifest manifest;
  manifest.base_dir = out_dir;
  manifest.meta = meta_for(cfg, a.corpus, "segmented");
  std::vector<const SegmentedWord*> words;
  ordered_json failures = ordered_json::array();
  std::map<std::string, std::size_t> errors;
  std::size_t words_expected = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.error.empty()) {
      ++errors[o.error];
      failures.push_back(ordered_json{{"line_id", o.line_id}, {"error", o.error}, {"message", o.message}});
      log(Level::Warn, o.line_id + ": " + o.message);
      continue;
    }
    words_expected += lines[i].words().size();
    for (const auto& w : o.words) words.push_back(&w);
  }
  manifest.crops.resize(words.size());
  for_each_index(words.size(), policy_for(cfg), [&](std::size_t i) {
    WordCrop c = words[i]->crop;
    c.image = "crops/" + c.crop_id + ".png";
    write_png(out_dir / c.image, words[i]->image);
    manifest.crops[i] = std::move(c);
  });
  write_manifest(out_dir / "manifest.jsonl", manifest);

  ordered_json errs = ordered_json::object();
  for (const auto& [k, v] : errors) errs[k] = v;
  write_report(out_dir / "segment_report.json",
               ordered_json{{"corpus", a.corpus},
                            {"lines", lines.size()},
                            {"lines_segmented", lines.size() - failures.size()},
                            {"lines_failed", failures.size()},
                            {"words_expected", words_expected},
                            {"crops", manifest.crops.size()},
                            {"errors", errs},
                            {"failures", failures}},
               cfg);
  return 0;
}

// ---- eval-seg ------------------------------------------------------------

struct EvalSegArgs {
  std::string corpus;
  std::string method = "cc";
  std::string out;
};

int run_eval_seg(const RunConfig& cfg, const EvalSegArgs& a) {
  const auto lines = read_corpus(a.corpus);
  std::vector<SegMethod> methods;
  if (a.method == "both")
    methods = {SegMethod::ConnectedComponents, SegMethod::Projection};
  else
    methods = {seg_method_from_string(a.method)};
  ordered_json reports = ordered_json::array();
  for (const auto m : methods) {
    const auto r = eval_corpus(lines, m, cfg.pipeline, policy_for(cfg));
    log(Level::Info, std::string(to_string(m)) + ": perfect-match rate " + std::to_string(r.perfect_match_rate));
    reports.push_back(to_json(r));
  }
  write_report(a.out,
               ordered_json{{"corpus", a.corpus},
                            {"tolerance_px", cfg.pipeline.segmentation.boundary_tol_px},
                            {"methods", reports}},
               cfg);
  return 0;
}

// ---- filter --------------------------------------------------------------

// Captures every outcome the wrapped backend produces.
class RecordingBackend : public OcrBackend {
 public:
  explicit RecordingBackend(const OcrBackend& inner) : inner_(inner) {}
  std::string kind() const override { return inner_.kind(); }
  OcrResult transcribe(const WordCrop& crop, const Manifest& m) const override { return inner_.transcribe(crop, m); }
  std::vector<OcrOutcome> transcribe_all(std::span<const WordCrop> crops, const Manifest& m,
                                         int jobs) const override {
    auto out = inner_.transcribe_all(crops, m, jobs);
    std::lock_guard lock(mu_);
    crops_.insert(crops_.end(), crops.begin(), crops.end());
    outcomes_.insert(outcomes_.end(), out.begin(), out.end());
    return out;
  }
  void save(const fs::path& path) const { write_transcription_table(path, crops_, outcomes_); }

 private:
  const OcrBackend& inner_;
  mutable std::mutex mu_;
  mutable std::vector<WordCrop> crops_;
  mutable std::vector<OcrOutcome> outcomes_;
};

struct FilterArgs {
  std::string manifest;
  std::string out;
  std::string report;
  std::string pool;
  std::string record;
};

int run_filter(const RunConfig& cfg, const FilterArgs& a) {
  const Manifest input = read_manifest(a.manifest);
  input.check();
  const auto backend = make_ocr_backend(cfg.ocr, cfg.seed);
  const RecordingBackend recorder(*backend);
  const auto result = run_pipeline(input, recorder, cfg.pipeline, policy_for(cfg));

  const fs::path out(a.out);
  const fs::path out_dir = out.parent_path();
  Manifest kept = rebase(result.kept, out_dir);
  kept.meta = meta_for(cfg, a.manifest, "filtered");
  write_manifest(out, kept);

  const fs::path pool_path = a.pool.empty() ? out_dir / "punctuation_pool.jsonl" : fs::path(a.pool);
  Manifest pool;
  pool.crops = result.punctuation_pool;
  pool.base_dir = input.base_dir;
  pool = rebase(pool, pool_path.parent_path());
  pool.meta = meta_for(cfg, a.manifest, "punctuation_pool");
  write_manifest(pool_path, pool);

  if (!a.record.empty()) recorder.save(a.record);
  if (!result.report.held_back.empty())
    log(Level::Warn, std::to_string(result.report.held_back.size()) + " crops held back without a transcription");

  const fs::path report = a.report.empty() ? out_dir / "filter_report.json" : fs::path(a.report);
  write_report(report,
               ordered_json{{"manifest", a.manifest}, {"ocr_backend", backend->kind()}, {"filter", to_json(result.report)}},
               cfg);
  return 0;
}

// ---- balance -------------------------------------------------------------

struct BalanceArgs {
  std::string manifest;
  std::string out;
  std::string report;
};

int run_balance(const RunConfig& cfg, const BalanceArgs& a) {
  const Manifest input = read_manifest(a.manifest);
  input.check();
  BalanceReport r;
  const fs::path out(a.out);
  Manifest balanced = rebase(oversample(input, cfg.pipeline.balancing, &r), out.parent_path());
  balanced.meta = meta_for(cfg, a.manifest, "balanced");
  write_manifest(out, balanced);
  const fs::path report = a.report.empty() ? out.parent_path() / "balance_report.json" : fs::path(a.report);
  write_report(report, ordered_json{{"manifest", a.manifest}, {"balance", to_json(r)}}, cfg);
  return 0;
}

// ---- bank ----------------------------------------------------------------

struct BankArgs {
  std::string pool;
  std::string out;
  std::optional<std::size_t> size;
};

int run_bank(const RunConfig& cfg, const BankArgs& a) {
  const Manifest pool = read_manifest(a.pool);
  std::vector<PunctMark> candidates;
  for (const auto& c : pool.crops) {
    const std::string glyph = text::trim(c.raw_label.empty() ? c.label : c.raw_label);
    if (!is_bank_glyph(glyph)) continue;
    candidates.push_back(PunctMark{glyph, c.crop_id, read_png(pool.resolve(c))});
  }
  const std::size_t size = a.size.value_or(static_cast<std::size_t>(cfg.pipeline.assembly.punct_bank_size));
  const auto bank = build_punct_bank(candidates, size, cfg.seed);
  save_bank(a.out, bank);
  ordered_json per_glyph = ordered_json::object();
  for (const auto& [g, v] : bank.marks) per_glyph[g] = v.size();
  write_report(fs::path(a.out) / "bank_report.json",
               ordered_json{{"pool", a.pool},
                            {"candidates", candidates.size()},
                            {"requested", size},
                            {"marks", bank.size()},
                            {"per_glyph", per_glyph}},
               cfg);
  return 0;
}

// ---- assemble ------------------------------------------------------------

struct AssembleArgs {
  std::string manifest;
  std::string plans;
  std::string out;
  std::string bank;
};

std::string plan_text(const SentencePlan& plan, const std::map<std::string, const WordCrop*>& by_id) {
  std::string s;
  for (const auto& t : plan.tokens) {
    if (t.kind == PlanToken::Kind::Word) {
      if (!s.empty()) s += ' ';
      s += by_id.at(t.value)->label;
    } else {
      if (t.value == "-") s += ' ';
      s += t.value;
    }
  }
  return s;
}

int run_assemble(const RunConfig& cfg, const AssembleArgs& a) {
  const Manifest words = read_manifest(a.manifest);
  std::map<std::string, const WordCrop*> by_id;
  for (const auto& c : words.crops) by_id[c.crop_id] = &c;
  const auto plans = read_plans(a.plans);
  std::optional<PunctuationBank> bank;
  if (!a.bank.empty()) bank = load_bank(a.bank);

  const fs::path out_dir(a.out);
  fs::create_directories(out_dir / "strips");
  struct Result {
    std::optional<ordered_json> record;
    std::string error;
    std::vector<std::string> warnings;
  };
  std::vector<Result> results(plans.size());
  for_each_index(plans.size(), policy_for(cfg), [&](std::size_t i) {
    const auto& plan = plans[i];
    auto& r = results[i];
    try {
      std::vector<GrayImage> images;
      for (const auto& id : plan.word_ids()) {
        const auto it = by_id.find(id);
        if (it == by_id.end()) throw Error(ErrorCode::InvalidInput, "unknown crop id " + id);
        images.push_back(read_png(words.resolve(*it->second)));
      }
      const auto strip = compose_strip(plan, images, bank ? &*bank : nullptr, cfg.pipeline.assembly, cfg.seed);
      const auto canvas = fit_canvas(strip.image, cfg.pipeline.canvas);
      const std::string file = "strips/" + plan.sentence_id + ".png";
      write_png(out_dir / file, canvas);
      r.warnings = strip.warnings;
      r.record = ordered_json{{"sentence_id", plan.sentence_id},
                              {"image", file},
                              {"text", plan_text(plan, by_id)},
                              {"width", canvas.width()},
                              {"height", canvas.height()},
                              {"strip_width", strip.image.width()}};
    } catch (const Error& e) {
      r.error = e.what();
    }
  });

  std::string body;
  ordered_json failures = ordered_json::array();
  ordered_json warnings = ordered_json::array();
  std::size_t ok = 0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    for (const auto& w : results[i].warnings) {
      log(Level::Warn, w);
      warnings.push_back(w);
    }
    if (results[i].record) {
      body += results[i].record->dump() + "\n";
      ++ok;
    } else {
      log(Level::Warn, plans[i].sentence_id + ": " + results[i].error);
      failures.push_back(ordered_json{{"sentence_id", plans[i].sentence_id}, {"error", results[i].error}});
    }
  }
  write_file_atomic(out_dir / "strips.jsonl", body);
  write_report(out_dir / "assemble_report.json",
               ordered_json{{"manifest", a.manifest},
                            {"plans", plans.size()},
                            {"strips", ok},
                            {"failures", failures},
                            {"warnings", warnings}},
               cfg);
  return 0;
}

// ---- eval-cer ------------------------------------------------------------

struct EvalCerArgs {
  std::string pairs;
  std::string vocab;
  std::string out;
};

int run_eval_cer(const RunConfig& cfg, const EvalCerArgs& a) {
  std::set<std::string> vocab;
  if (!a.vocab.empty()) {
    std::ifstream in(a.vocab);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + a.vocab);
    for (std::string line; std::getline(in, line);)
      if (auto w = text::trim(line); !w.empty()) vocab.insert(w);
  }
  const auto rare = cfg.pipeline.rare_letter_set();
  std::vector<CerSample> samples;
  for (const auto& j : read_jsonl(a.pairs)) {
    try {
      const auto ref = j.at("reference").get<std::string>();
      const bool in_vocab = vocab.empty() ? j.value("in_vocabulary", false) : vocab.count(ref) > 0;
      samples.push_back(make_cer_sample(j.value("crop_id", std::string()), j.value("writer_id", std::string()), ref,
                                        j.at("hypothesis").get<std::string>(), in_vocab, rare));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidInput, a.pairs + ": " + e.what());
    }
  }
  if (samples.empty()) throw Error(ErrorCode::EmptyCorpus, a.pairs + " has no samples");
  const auto report = cer(samples, policy_for(cfg));
  write_report(a.out, ordered_json{{"pairs", a.pairs}, {"cer", to_json(report)}}, cfg);
  return 0;
}

// ---- eval-fid ------------------------------------------------------------

struct EvalFidArgs {
  std::string real;
  std::string generated;
  std::string out;
};

int run_eval_fid(const RunConfig& cfg, const EvalFidArgs& a) {
  const bool unbiased = cfg.pipeline.metrics.unbiased_covariance;
  const auto p = EmbeddingSet::from_samples(read_embeddings(a.real), unbiased, policy_for(cfg));
  const auto q = EmbeddingSet::from_samples(read_embeddings(a.generated), unbiased, policy_for(cfg));
  const double d = frechet_distance(p, q);
  write_report(a.out,
               ordered_json{{"real", a.real},
                            {"generated", a.generated},
                            {"real_count", p.count()},
                            {"generated_count", q.count()},
                            {"dimension", p.dimension()},
                            {"unbiased_covariance", unbiased},
                            {"frechet_distance", d}},
               cfg);
  return 0;
}

// ---- synth ---------------------------------------------------------------

struct SynthArgs {
  std::string out;
  std::size_t lines = 100;
  std::size_t adversarial = 0;
  std::size_t writers = 4;
  bool punctuation = false;
  bool mixed = false;
};

int run_synth(const RunConfig& cfg, const SynthArgs& a) {
  synth::CorpusOptions o;
  o.lines = a.lines;
  o.adversarial = a.adversarial;
  o.writers = a.writers;
  o.line.punctuation = a.punctuation;
  o.line.mixed_labels = a.mixed;
  const auto corpus = synth::make_corpus(cfg.seed, o);
  const fs::path out_dir(a.out);
  fs::create_directories(out_dir / "lines");
  std::vector<std::string> rows(corpus.size());
  for_each_index(corpus.size(), policy_for(cfg), [&](std::size_t i) {
    LineRecord rec = corpus[i].record;
    const std::string file = "lines/" + rec.line_id + ".png";
    write_png(out_dir / file, *rec.image);
    rec.image.reset();
    rec.image_path = file;
    auto j = to_json(rec);
    j["adversarial"] = corpus[i].adversarial;
    rows[i] = j.dump() + "\n";
  });
  std::string body;
  for (const auto& r : rows) body += r;
  write_file_atomic(out_dir / "corpus.jsonl", body);
  log(Level::Info, "wrote " + std::to_string(corpus.size()) + " lines to " + out_dir.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hwset: build a handwritten word dataset from line images"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--jobs", g.jobs, "worker threads (0 = all cores)");
  app.add_option("--log-level", g.log_level, "debug | info | warn | error");
  app.add_option("--ocr-backend", g.ocr_backend, "file | http | echo")
      ->check(CLI::IsMember({"file", "http", "echo"}));
  app.add_option("--ocr-endpoint", g.ocr_endpoint, "base URL of the OCR service");
  app.add_option("--ocr-table", g.ocr_table, "transcription table (JSONL) for the file backend");

  std::function<int(const RunConfig&)> action;

  auto* config_cmd = app.add_subcommand("config", "print the effective configuration");
  config_cmd->callback([&] {
    action = [](const RunConfig& cfg) {
      std::cout << to_json(cfg).dump(2) << "\n";
      return 0;
    };
  });

  SegmentArgs seg;
  auto* seg_cmd = app.add_subcommand("segment", "cut line images into word crops");
  seg_cmd->add_option("--corpus", seg.corpus, "line corpus (JSONL)")->required()->check(CLI::ExistingFile);
  seg_cmd->add_option("--out", seg.out, "output directory")->required();
  seg_cmd->callback([&] { action = [&](const RunConfig& c) { return run_segment(c, seg); }; });

  EvalSegArgs eseg;
  auto* eseg_cmd = app.add_subcommand("eval-seg", "score word boundaries against ground truth");
  eseg_cmd->add_option("--corpus", eseg.corpus, "line corpus with gt_spans")->required()->check(CLI::ExistingFile);
  eseg_cmd->add_option("--method", eseg.method, "cc | projection | both")
      ->check(CLI::IsMember({"cc", "projection", "both"}));
  eseg_cmd->add_option("--out", eseg.out, "report path")->required();
  eseg_cmd->callback([&] { action = [&](const RunConfig& c) { return run_eval_seg(c, eseg); }; });

  FilterArgs filt;
  auto* filt_cmd = app.add_subcommand("filter", "run the five-stage filtering cascade");
  filt_cmd->add_option("--manifest", filt.manifest, "word manifest")->required()->check(CLI::ExistingFile);
  filt_cmd->add_option("--out", filt.out, "kept-crops manifest")->required();
  filt_cmd->add_option("--report", filt.report, "report path");
  filt_cmd->add_option("--pool", filt.pool, "punctuation pool manifest");
  filt_cmd->add_option("--record", filt.record, "save OCR outcomes as a transcription table");
  filt_cmd->callback([&] { action = [&](const RunConfig& c) { return run_filter(c, filt); }; });

  BalanceArgs bal;
  auto* bal_cmd = app.add_subcommand("balance", "oversample crops containing rare letters");
  bal_cmd->add_option("--manifest", bal.manifest, "word manifest")->required()->check(CLI::ExistingFile);
  bal_cmd->add_option("--out", bal.out, "balanced manifest")->required();
  bal_cmd->add_option("--report", bal.report, "report path");
  bal_cmd->callback([&] { action = [&](const RunConfig& c) { return run_balance(c, bal); }; });

  BankArgs bank;
  auto* bank_cmd = app.add_subcommand("bank", "sample a punctuation bank from the pool");
  bank_cmd->add_option("--pool", bank.pool, "punctuation pool manifest")->required()->check(CLI::ExistingFile);
  bank_cmd->add_option("--out", bank.out, "bank directory")->required();
  bank_cmd->add_option("--size", bank.size, "number of marks");
  bank_cmd->callback([&] { action = [&](const RunConfig& c) { return run_bank(c, bank); }; });

  AssembleArgs asmb;
  auto* asm_cmd = app.add_subcommand("assemble", "compose sentence strips from word crops");
  asm_cmd->add_option("--manifest", asmb.manifest, "word manifest")->required()->check(CLI::ExistingFile);
  asm_cmd->add_option("--plans", asmb.plans, "sentence plans (JSONL)")->required()->check(CLI::ExistingFile);
  asm_cmd->add_option("--out", asmb.out, "output directory")->required();
  asm_cmd->add_option("--bank", asmb.bank, "punctuation bank directory");
  asm_cmd->callback([&] { action = [&](const RunConfig& c) { return run_assemble(c, asmb); }; });

  EvalCerArgs ecer;
  auto* ecer_cmd = app.add_subcommand("eval-cer", "character error rate with subset breakdown");
  ecer_cmd->add_option("--pairs", ecer.pairs, "reference/hypothesis pairs (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  ecer_cmd->add_option("--vocab", ecer.vocab, "training vocabulary, one word per line");
  ecer_cmd->add_option("--out", ecer.out, "report path")->required();
  ecer_cmd->callback([&] { action = [&](const RunConfig& c) { return run_eval_cer(c, ecer); }; });

  EvalFidArgs efid;
  auto* efid_cmd = app.add_subcommand("eval-fid", "Frechet distance between two embedding sets");
  efid_cmd->add_option("--real", efid.real, "real embeddings")->required()->check(CLI::ExistingFile);
  efid_cmd->add_option("--generated", efid.generated, "generated embeddings")->required()->check(CLI::ExistingFile);
  efid_cmd->add_option("--out", efid.out, "report path")->required();
  efid_cmd->callback([&] { action = [&](const RunConfig& c) { return run_eval_fid(c, efid); }; });

  SynthArgs syn;
  auto* syn_cmd = app.add_subcommand("synth", "render a synthetic line corpus with ground-truth spans");
  syn_cmd->add_option("--out", syn.out, "output directory")->required();
  syn_cmd->add_option("--lines", syn.lines, "number of lines");
  syn_cmd->add_option("--adversarial", syn.adversarial, "lines with a descender bridging a word gap");
  syn_cmd->add_option("--writers", syn.writers, "number of writer ids");
  syn_cmd->add_flag("--punctuation", syn.punctuation, "add punctuation tokens");
  syn_cmd->add_flag("--mixed", syn.mixed, "add Latin and numeric tokens");
  syn_cmd->callback([&] { action = [&](const RunConfig& c) { return run_synth(c, syn); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const RunConfig cfg = resolve_config(g);
    return action(cfg);
  } catch (const Error& e) {
    std::cerr << "hwset: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "hwset: internal error: " << e.what() << "\n";
    return 3;
  }
}
