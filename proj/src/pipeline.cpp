#include "crossbound/pipeline.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "crossbound/bundle.hpp"
#include "crossbound/corpus.hpp"
#include "crossbound/mbox.hpp"
#include "crossbound/report.hpp"
#include "crossbound/revlog.hpp"
#include "crossbound/store.hpp"
#include "crossbound/threading.hpp"

namespace crossbound {

using nlohmann::json;

namespace {

bool require_file(const std::filesystem::path& p, std::ostream& log) {
  if (std::filesystem::exists(p)) return true;
  log << "error: missing input file: " << p.string() << "\n";
  return false;
}

}  // namespace

int cmd_ingest(const AnalysisConfig& config, std::ostream& log) {
  if (!require_file(config.roster_path, log)) return kExitInput;
  for (const ListConfig& l : config.lists) {
    for (const auto& a : l.archives) {
      if (!require_file(a, log)) return kExitInput;
    }
  }
  for (const RevLogConfig& r : config.revision_logs) {
    if (!require_file(r.path, log)) return kExitInput;
  }
  if (config.stage_lexicon_path && !require_file(*config.stage_lexicon_path, log)) {
    return kExitInput;
  }
  if (config.stage_overrides_path && !require_file(*config.stage_overrides_path, log)) {
    return kExitInput;
  }

  Roster roster;
  try {
    roster = Roster::load(config.roster_path);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitInput;
  }

  std::vector<Message> messages;
  std::vector<Diagnostic> diagnostics;
  std::map<std::string, ParticipantId> discovered;
  for (const ListConfig& l : config.lists) {
    for (const auto& archive : l.archives) {
      MboxParseResult parsed = parse_mbox_file(archive, l.list_id);
      for (Message& m : parsed.messages) {
        ParticipantId who = resolve_identity(m.sender_raw, roster);
        m.sender = who.canonical_name;
        if (!roster.find_canonical(who.canonical_name)) {
          discovered.emplace(who.canonical_name, std::move(who));
        }
        messages.push_back(std::move(m));
      }
      diagnostics.insert(diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    }
  }
  std::sort(messages.begin(), messages.end(), [](const Message& a, const Message& b) {
    if (a.list_id != b.list_id) return a.list_id < b.list_id;
    if (a.date != b.date) return a.date < b.date;
    return a.message_id < b.message_id;
  });

  std::vector<RevisionRecord> revisions;
  for (const RevLogConfig& r : config.revision_logs) {
    RevLogParseResult parsed =
        parse_revision_log_file(r.path, r.space, config.credit_patterns, roster);
    revisions.insert(revisions.end(), parsed.records.begin(), parsed.records.end());
    diagnostics.insert(diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  }
  std::sort(revisions.begin(), revisions.end(), [](const RevisionRecord& a, const RevisionRecord& b) {
    if (a.date != b.date) return a.date < b.date;
    return a.revision_id < b.revision_id;
  });

  Roster stored_roster = roster;
  for (const auto& [name, p] : discovered) stored_roster.entries.push_back(p);
  std::sort(stored_roster.entries.begin(), stored_roster.entries.end(),
            [](const ParticipantId& a, const ParticipantId& b) {
              return a.canonical_name < b.canonical_name;
            });

  StorePaths store{config.output_dir / "store"};
  try {
    SelectionOptions sopt;
    ThreadingOptions topt;
    topt.fallback_window_days = config.thresholds.fallback_window_days;

    json meta;
    meta["schema_version"] = kSchemaVersion;
    json corpora_names = json::array();

    for (const CorpusConfig& corpus : config.corpora) {
      std::vector<std::string> keywords;
      for (const std::string& kw : corpus.keywords) keywords.push_back(kw);
      CorpusSelection selection =
          select_corpus(corpus.name, messages, keywords, corpus.date_from, corpus.date_to, sopt);
      ThreadingResult threads = build_discussions(selection, messages, topt);
      diagnostics.insert(diagnostics.end(), threads.diagnostics.begin(),
                         threads.diagnostics.end());

      write_json_atomic(store.selection(corpus.name), selection_to_json(selection));
      json jd = json::array();
      for (const Discussion& d : threads.discussions) jd.push_back(discussion_to_json(d));
      write_json_atomic(store.discussions(corpus.name), jd);
      corpora_names.push_back(corpus.name);
      log << "ingest: corpus " << corpus.name << ": " << selection.messages.size()
          << " messages, " << threads.discussions.size() << " discussions\n";
    }

    json jm = json::array();
    for (const Message& m : messages) jm.push_back(message_to_json(m));
    write_json_atomic(store.messages(), jm);

    json jr = json::array();
    for (const RevisionRecord& r : revisions) jr.push_back(revision_to_json(r));
    write_json_atomic(store.revisions(), jr);

    write_json_atomic(store.roster(), roster_to_json(stored_roster));

    json jdiag = json::array();
    for (const Diagnostic& d : diagnostics) jdiag.push_back(diagnostic_to_json(d));
    write_json_atomic(store.diagnostics(), jdiag);

    meta["corpora"] = corpora_names;
    json jlists = json::array();
    for (const ListConfig& l : config.lists) jlists.push_back(l.list_id);
    meta["lists"] = jlists;
    write_json_atomic(store.meta(), meta);
  } catch (const StoreError& e) {
    log << "error: " << e.what() << "\n";
    return kExitStore;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitInput;
  }

  log << "ingest: " << messages.size() << " messages, " << revisions.size() << " revisions, "
      << diagnostics.size() << " diagnostics\n";
  return kExitOk;
}

int cmd_analyze(const AnalysisConfig& config, std::ostream& log) {
  StorePaths store{config.output_dir / "store"};
  try {
    json meta = read_json(store.meta());
    if (meta.value("schema_version", -1) != kSchemaVersion) {
      log << "error: store schema version mismatch\n";
      return kExitStore;
    }

    std::vector<Message> messages;
    for (const auto& jm : read_json(store.messages())) {
      messages.push_back(message_from_json(jm));
    }
    std::vector<RevisionRecord> revisions;
    for (const auto& jr : read_json(store.revisions())) {
      revisions.push_back(revision_from_json(jr));
    }
    Roster roster = roster_from_json(read_json(store.roster()));

    StageLexicon lexicon;
    if (config.stage_lexicon_path) lexicon = load_stage_lexicon(*config.stage_lexicon_path);
    std::map<std::string, std::string> overrides;
    if (config.stage_overrides_path) {
      overrides = load_stage_overrides(*config.stage_overrides_path);
    }

    json bundle;
    bundle["schema_version"] = kSchemaVersion;
    json corpora = json::array();
    for (const CorpusConfig& corpus : config.corpora) {
      CorpusSelection selection = selection_from_json(read_json(store.selection(corpus.name)));
      std::vector<Discussion> discussions;
      for (const auto& jd : read_json(store.discussions(corpus.name))) {
        discussions.push_back(discussion_from_json(jd));
      }
      corpora.push_back(compute_corpus_metrics(corpus, config.lists, selection, discussions,
                                               messages, revisions, roster, config.thresholds,
                                               config.champion, lexicon, overrides));
      log << "analyze: corpus " << corpus.name << " done\n";
    }
    bundle["corpora"] = corpora;
    write_json_atomic(config.output_dir / "metrics.json", bundle);
  } catch (const StoreError& e) {
    log << "error: " << e.what() << "\n";
    return kExitStore;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitStore;
  }
  return kExitOk;
}

int cmd_report(const AnalysisConfig& config, const std::set<std::string>& formats,
               std::ostream& log) {
  std::set<std::string> selected = formats;
  if (selected.empty()) selected = {"csv", "json", "dot"};
  for (const std::string& f : selected) {
    if (f != "csv" && f != "json" && f != "dot") {
      log << "error: unknown report format: " << f << "\n";
      return kExitInput;
    }
  }
  try {
    json bundle = read_json(config.output_dir / "metrics.json");
    if (bundle.value("schema_version", -1) != kSchemaVersion) {
      log << "error: metrics bundle schema version mismatch\n";
      return kExitStore;
    }
    write_reports(bundle, config.output_dir / "report", selected);
  } catch (const StoreError& e) {
    log << "error: " << e.what() << "\n";
    return kExitStore;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitStore;
  }
  log << "report: written to " << (config.output_dir / "report").string() << "\n";
  return kExitOk;
}

}  // namespace crossbound
