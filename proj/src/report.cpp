#include "crossbound/report.hpp"

#include <vector>

#include "crossbound/attraction.hpp"
#include "crossbound/bundle.hpp"
#include "crossbound/datetime.hpp"
#include "crossbound/store.hpp"

namespace crossbound {

using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string num_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return format_double(v.get<double>());
}

}  // namespace

std::string render_table1_csv(const json& bundle) {
  std::string out = "corpus,list,discussions,participants,messages\n";
  for (const auto& corpus : bundle.at("corpora")) {
    for (const auto& jl : corpus.at("lists")) {
      out += csv_field(corpus.at("name")) + "," + csv_field(jl.at("list_id")) + "," +
             num_field(jl.at("n_discussions")) + "," + num_field(jl.at("n_participants")) + "," +
             num_field(jl.at("n_messages")) + "\n";
    }
  }
  return out;
}

std::string render_table2_csv(const json& bundle) {
  std::string out = "corpus,list,class,count,percent\n";
  for (const auto& corpus : bundle.at("corpora")) {
    for (const auto& jl : corpus.at("lists")) {
      const std::string prefix =
          csv_field(corpus.at("name")) + "," + csv_field(jl.at("list_id")) + ",";
      const json& rp = jl.at("regular_pct");
      const json& op = jl.at("occasional_pct");
      out += prefix + "regular," + num_field(jl.at("n_regular")) + "," +
             (rp.is_null() ? "" : num_field(rp) + "%") + "\n";
      out += prefix + "occasional," + num_field(jl.at("n_occasional")) + "," +
             (op.is_null() ? "" : num_field(op) + "%") + "\n";
    }
  }
  return out;
}

std::string render_table3_csv(const json& bundle) {
  // headline rows: the leader, the exclusive regular/occasional rows, and
  // the common/cross roll-ups
  static const char* kRows[] = {"project_leader", "regular_only", "occasional_only", "common_all",
                                "cross_all"};
  std::string out = "corpus,list,category,members,mean_messages\n";
  for (const auto& corpus : bundle.at("corpora")) {
    for (const auto& jl : corpus.at("lists")) {
      for (const char* cat : kRows) {
        for (const auto& row : jl.at("involvement")) {
          if (row.at("category").get<std::string>() != cat) continue;
          out += csv_field(corpus.at("name")) + "," + csv_field(jl.at("list_id")) + "," + cat +
                 "," + num_field(row.at("members")) + "," + num_field(row.at("mean")) + "\n";
        }
      }
    }
  }
  return out;
}

std::string render_contributions_csv(const json& bundle) {
  std::string out =
      "corpus,participant,role,msgs_user_list,msgs_dev_list,doc_eff,doc_cred,impl_eff,impl_cred\n";
  for (const auto& corpus : bundle.at("corpora")) {
    std::string user_list, dev_list;
    for (const auto& jl : corpus.at("lists")) {
      if (jl.at("orientation") == "user") user_list = jl.at("list_id");
      if (jl.at("orientation") == "developer") dev_list = jl.at("list_id");
    }
    for (const auto& c : corpus.at("contribution_profiles")) {
      const json& msgs = c.at("messages");
      auto count_for = [&](const std::string& list) -> std::string {
        return msgs.contains(list) ? num_field(msgs[list]) : "0";
      };
      out += csv_field(corpus.at("name")) + "," + csv_field(c.at("participant")) + "," +
             csv_field(c.at("role")) + "," + count_for(user_list) + "," + count_for(dev_list) +
             "," + num_field(c.at("doc_effective")) + "," + num_field(c.at("doc_credited")) +
             "," + num_field(c.at("impl_effective")) + "," + num_field(c.at("impl_credited")) +
             "\n";
    }
  }
  return out;
}

std::string render_quotes_csv(const json& bundle) {
  std::string out = "corpus,quoter,quoted,quoter_message,quoted_message,list,depth,resolved\n";
  for (const auto& corpus : bundle.at("corpora")) {
    for (const auto& e : corpus.at("quotes").at("edges")) {
      out += csv_field(corpus.at("name")) + "," + csv_field(e.at("quoter")) + "," +
             csv_field(e.at("quoted")) + "," + csv_field(e.at("quoter_message")) + "," +
             csv_field(e.at("quoted_message")) + "," + csv_field(e.at("list")) + "," +
             num_field(e.at("depth")) + "," + (e.at("resolved").get<bool>() ? "true" : "false") +
             "\n";
    }
  }
  return out;
}

std::string render_rd_csv(const json& bundle) {
  std::string out = "corpus,scope,quoter_category,quoted_category,count,expected,rd\n";
  for (const auto& corpus : bundle.at("corpora")) {
    auto emit = [&](const std::string& scope, const json& table, const json& rd) {
      const json& labels = rd.at("labels");
      for (size_t i = 0; i < labels.size(); ++i) {
        for (size_t j = 0; j < labels.size(); ++j) {
          const json& v = rd.at("values")[i][j];
          out += csv_field(corpus.at("name")) + "," + csv_field(scope) + "," +
                 csv_field(labels[i]) + "," + csv_field(labels[j]) + "," +
                 num_field(table.at("counts")[i][j]) + "," +
                 num_field(rd.at("expected")[i][j]) + "," + num_field(v) + "\n";
        }
      }
    };
    emit("pooled", corpus.at("contingency").at("pooled"), corpus.at("rd").at("pooled"));
    const json& per_list = corpus.at("rd").at("per_list");
    for (auto it = per_list.begin(); it != per_list.end(); ++it) {
      emit(it.key(), corpus.at("contingency").at("per_list").at(it.key()), it.value());
    }
  }
  return out;
}

std::string render_timeline_json(const json& bundle) {
  json out;
  json corpora = json::array();
  for (const auto& corpus : bundle.at("corpora")) {
    json jc;
    jc["corpus"] = corpus.at("name");
    json records = json::array();
    for (const auto& r : corpus.at("timeline")) {
      json jr = r;
      jr["start_iso"] = format_iso8601(r.at("start").get<Timestamp>());
      jr["end_iso"] = format_iso8601(r.at("end").get<Timestamp>());
      records.push_back(std::move(jr));
    }
    jc["records"] = records;
    corpora.push_back(std::move(jc));
  }
  out["corpora"] = corpora;
  return out.dump(2) + "\n";
}

std::string render_attraction_dot(const json& bundle) {
  std::string out;
  for (const auto& corpus : bundle.at("corpora")) {
    std::vector<std::string> list_order;
    for (const auto& jl : corpus.at("lists")) list_order.push_back(jl.at("list_id"));

    std::vector<std::string> labels;
    for (const auto& l : corpus.at("rd").at("pooled").at("labels")) {
      labels.push_back(l.get<std::string>());
    }
    std::vector<AttractionEdge> edges;
    for (const std::string& list : list_order) {
      for (const auto& je : corpus.at("attraction").at("per_list").at(list)) {
        AttractionEdge e;
        e.from = je.at("from");
        e.to = je.at("to");
        e.weight = je.at("weight");
        e.count = je.at("count");
        e.list_id = list;
        edges.push_back(std::move(e));
      }
    }
    out += attraction_dot("attraction-" + corpus.at("name").get<std::string>(), labels, edges,
                          list_order);
  }
  return out;
}

void write_reports(const json& bundle, const std::filesystem::path& dir,
                   const std::set<std::string>& formats) {
  std::filesystem::create_directories(dir);
  if (formats.count("csv")) {
    write_text_atomic(dir / "table1.csv", render_table1_csv(bundle));
    write_text_atomic(dir / "table2.csv", render_table2_csv(bundle));
    write_text_atomic(dir / "table3.csv", render_table3_csv(bundle));
    write_text_atomic(dir / "contributions.csv", render_contributions_csv(bundle));
    write_text_atomic(dir / "quotes.csv", render_quotes_csv(bundle));
    write_text_atomic(dir / "rd.csv", render_rd_csv(bundle));
  }
  if (formats.count("json")) {
    write_text_atomic(dir / "timeline.json", render_timeline_json(bundle));
  }
  if (formats.count("dot")) {
    write_text_atomic(dir / "attraction.dot", render_attraction_dot(bundle));
  }
}

}  // namespace crossbound
