#include "dabe/transcript.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "json_util.hpp"

namespace dabe {

std::string_view to_string(Model model) noexcept {
  switch (model) {
    case Model::hur1: return "hur1";
    case Model::hur2: return "hur2";
    case Model::wang: return "wang";
    case Model::lin: return "lin";
    case Model::secured: return "secured";
  }
  return "unknown";
}

Model model_from_string(std::string_view name) {
  for (Model m : {Model::hur1, Model::hur2, Model::wang, Model::lin, Model::secured}) {
    if (to_string(m) == name) return m;
  }
  throw Error(Errc::BadConfig, "unknown model '" + std::string(name) + "'");
}

std::string PartyId::label() const {
  switch (role) {
    case Role::TI: return "TI";
    case Role::KGC: return "KGC";
    case Role::AA: return "AA";
    case Role::CA: return "CA";
    case Role::Ai: return "A" + std::to_string(index);
    case Role::KA: return "KA";
    case Role::CSP: return "CSP";
    case Role::CS: return "CS";
    case Role::DS: return "DS";
    case Role::DU: return index == 0 ? "DU" : "DU" + std::to_string(index);
    case Role::DO: return "DO";
    case Role::All: return "*";
  }
  return "?";
}

void Transcript::send(PartyId from, PartyId to, std::string step, Payload payload,
                      std::vector<std::string> attributes) {
  entries_.emplace_back(Message{next_seq_++, from, to, std::move(step), std::move(attributes), std::move(payload)});
}

void Transcript::ideal(std::string name, std::vector<PartyId> outputs_to) {
  entries_.emplace_back(IdealRecord{next_seq_++, std::move(name), std::move(outputs_to)});
}

void Transcript::output(PartyId party, Payload values) { outputs_.emplace_back(party, std::move(values)); }

std::vector<const Message*> Transcript::messages() const {
  std::vector<const Message*> out;
  for (const auto& e : entries_) {
    if (const auto* m = std::get_if<Message>(&e)) out.push_back(m);
  }
  return out;
}

std::size_t Transcript::ideal_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.index() == 1; }));
}

std::string Transcript::to_jsonl() const {
  using nlohmann::ordered_json;
  std::string out;
  ordered_json header;
  header["model"] = std::string(to_string(model_));
  if (seed_) header["seed"] = std::to_string(*seed_);
  out += header.dump() + "\n";
  for (const auto& entry : entries_) {
    ordered_json line;
    if (const auto* m = std::get_if<Message>(&entry)) {
      line["seq"] = m->seq;
      line["from"] = m->from.label();
      line["to"] = m->to.label();
      line["step"] = m->step;
      if (!m->attributes.empty()) line["attrs"] = m->attributes;
      line["payload"] = detail::payload_json(m->payload);
    } else {
      const auto& r = std::get<IdealRecord>(entry);
      line["seq"] = r.seq;
      line["ideal"] = r.ideal;
      ordered_json to = ordered_json::array();
      for (const auto& p : r.outputs_to) to.push_back(p.label());
      line["outputs_to"] = to;
    }
    out += line.dump() + "\n";
  }
  for (const auto& [party, values] : outputs_) {
    ordered_json line;
    line["output"] = party.label();
    line["values"] = detail::payload_json(values);
    out += line.dump() + "\n";
  }
  return out;
}

const std::vector<std::string>& step_script(Model model) {
  static const std::vector<std::string> hur1{"setup", "1", "2", "3", "4", "5"};
  static const std::vector<std::string> hur2{"setup", "1", "2", "3", "4", "5", "6", "7", "8"};
  static const std::vector<std::string> wang{"setup", "1", "2", "3", "4", "5", "6", "7", "8"};
  static const std::vector<std::string> lin{"setup", "1", "2", "3", "4", "5", "6", "7", "8", "9", "dec"};
  static const std::vector<std::string> secured{"setup", "1", "2", "3", "4"};
  switch (model) {
    case Model::hur1: return hur1;
    case Model::hur2: return hur2;
    case Model::wang: return wang;
    case Model::lin: return lin;
    case Model::secured: return secured;
  }
  return hur1;
}

}  // namespace dabe
