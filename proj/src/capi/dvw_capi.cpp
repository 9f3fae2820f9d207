#include "dvw/dvw.h"

#include <new>
#include <string>

#include "runner.hpp"

struct dvw_report {
  int exitCode;
  std::string text;
};

struct dvw_arith_set {
  dvw::ArithSet set;
  std::string printed;
};

namespace {

thread_local std::string lastError;

dvw_status fail(dvw_status s, const std::string& msg) {
  lastError = msg;
  return s;
}

template <class F>
dvw_status guarded(F&& f) {
  try {
    return f();
  } catch (const dvw::InputError& e) {
    return fail(DVW_INPUT_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DVW_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(DVW_INTERNAL_ERROR, e.what());
  }
}

dvw_status wrapSet(dvw::ArithSet s, dvw_arith_set** out) {
  std::string printed = s.print();
  *out = new dvw_arith_set{std::move(s), std::move(printed)};
  return DVW_OK;
}

}  // namespace

extern "C" {

const char* dvw_version(void) { return "1.0.0"; }

const char* dvw_last_error(void) { return lastError.c_str(); }

void dvw_options_default(dvw_options* opts) {
  if (!opts) return;
  const dvw::Bounds b;
  opts->threshold = b.threshold;
  opts->period = b.period;
  opts->witness_threshold = b.witnessThreshold;
  opts->format = DVW_FORMAT_JSON;
  opts->universe = 0;
}

dvw_status dvw_run(const char* verb, const char* input, const dvw_options* opts,
                   dvw_report** out) {
  if (!verb || !out) return fail(DVW_INPUT_ERROR, "verb and out must not be null");
  *out = nullptr;
  return guarded([&] {
    dvw_options o;
    dvw_options_default(&o);
    if (opts) o = *opts;
    dvw::RunOptions ro;
    ro.bounds = {o.threshold, o.period, o.witness_threshold};
    ro.json = o.format != DVW_FORMAT_TEXT;
    ro.universe = o.universe;
    dvw::RunResult r = dvw::runCommand(verb, input ? input : "", ro);
    *out = new dvw_report{r.exitCode, std::move(r.output)};
    if (r.exitCode == dvw::kExitInputError || r.exitCode == dvw::kExitInternal)
      lastError = (*out)->text;
    return static_cast<dvw_status>(r.exitCode);
  });
}

const char* dvw_report_text(const dvw_report* report) { return report ? report->text.c_str() : ""; }

int dvw_report_exit_code(const dvw_report* report) {
  return report ? report->exitCode : DVW_INTERNAL_ERROR;
}

void dvw_report_free(dvw_report* report) { delete report; }

dvw_status dvw_arith_set_parse(const char* text, dvw_arith_set** out) {
  if (!text || !out) return fail(DVW_INPUT_ERROR, "text and out must not be null");
  *out = nullptr;
  return guarded([&] { return wrapSet(dvw::ArithSet::parse(text), out); });
}

int dvw_arith_set_contains(const dvw_arith_set* set, uint64_t n) {
  return set && set->set.contains(n) ? 1 : 0;
}

dvw_status dvw_arith_set_binary(char op, const dvw_arith_set* a, const dvw_arith_set* b,
                                dvw_arith_set** out) {
  if (!a || !out || (op != 'c' && !b)) return fail(DVW_INPUT_ERROR, "missing operand");
  *out = nullptr;
  return guarded([&] {
    switch (op) {
      case 'u': return wrapSet(dvw::unite(a->set, b->set), out);
      case 'i': return wrapSet(dvw::intersect(a->set, b->set), out);
      case 'd': return wrapSet(dvw::difference(a->set, b->set), out);
      case 'c': return wrapSet(dvw::complement(a->set), out);
      default: return fail(DVW_INPUT_ERROR, std::string("unknown operation '") + op + "'");
    }
  });
}

const char* dvw_arith_set_print(const dvw_arith_set* set) { return set ? set->printed.c_str() : ""; }

void dvw_arith_set_free(dvw_arith_set* set) { delete set; }

}  // extern "C"
