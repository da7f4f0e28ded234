/*
 * Copyright 2026 The IEMA Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "iema/interface/html_export.h"

#include "fmt/format.h"
#include "iema/common/status_macros.h"
#include "iema/session/bundle.h"

namespace iema::interface {
namespace {

constexpr std::string_view kViewer = R"JS(
(function () {
  var bundle = JSON.parse(document.getElementById('iema-data').textContent);
  var app = document.getElementById('app');
  function el(tag, text, cls) {
    var node = document.createElement(tag);
    if (text !== undefined) node.textContent = text;
    if (cls) node.className = cls;
    return node;
  }
  function fixed(x) { return x === null ? 'n/a' : Number(x).toFixed(3); }
  function table(rows) {
    var t = el('table');
    rows.forEach(function (r) {
      var tr = el('tr');
      r.forEach(function (c) { tr.appendChild(el('td', String(c))); });
      t.appendChild(tr);
    });
    return t;
  }
  function line(xs, ys) {
    var ns = 'http://www.w3.org/2000/svg', w = 320, h = 120;
    var svg = document.createElementNS(ns, 'svg');
    svg.setAttribute('width', w); svg.setAttribute('height', h);
    if (xs.length < 2) return svg;
    var x0 = Math.min.apply(null, xs), x1 = Math.max.apply(null, xs);
    var y0 = Math.min.apply(null, ys), y1 = Math.max.apply(null, ys);
    var sx = function (x) { return 5 + (w - 10) * (x - x0) / ((x1 - x0) || 1); };
    var sy = function (y) { return h - 5 - (h - 10) * (y - y0) / ((y1 - y0) || 1); };
    var p = document.createElementNS(ns, 'polyline');
    p.setAttribute('points', xs.map(function (x, i) {
      return sx(x) + ',' + sy(ys[i]);
    }).join(' '));
    p.setAttribute('fill', 'none'); p.setAttribute('stroke', '#1f5fa8');
    svg.appendChild(p);
    return svg;
  }
  function body(r) {
    switch (r.kind) {
      case 'attribution':
        return table([['baseline', fixed(r.baseline)]].concat(
          r.contributions.map(function (c) { return [c.variable, fixed(c.value)]; }),
          [['prediction', fixed(r.prediction)]]));
      case 'importance':
        return table(r.variables.map(function (v) {
          return [v.variable, fixed(v.importance)];
        }));
      case 'profile': case 'model_profile':
        return line(r.grid, r.values);
      case 'data_profile':
        return line(r.curve.map(function (p) { return p.x; }),
                    r.curve.map(function (p) { return p.mean_target; }));
      case 'distribution':
        return table(r.bins.map(function (b) {
          return [b.label !== undefined ? b.label :
                  fixed(b.lower) + ' to ' + fixed(b.upper), b.count];
        }));
      case 'correlation_matrix':
        return table([[''].concat(r.variables)].concat(r.values.map(
          function (row, i) { return [r.variables[i]].concat(row.map(fixed)); })));
      case 'correlation_network':
        return table(r.edges.map(function (e) { return [e.a, e.b, fixed(e.weight)]; }));
      case 'mosaic':
        return table([[''].concat(r.levels_b)].concat(r.counts.map(
          function (row, i) { return [r.levels_a[i]].concat(row); })));
      case 'variable_selection':
        return el('p', 'variable: ' + r.variable);
    }
    return el('pre', JSON.stringify(r));
  }
  app.appendChild(el('h1', bundle.dataset.name + ' / ' + bundle.model.id));
  var grid = el('div', undefined, 'grid');
  bundle.history.forEach(function (step) {
    var panel = el('section', undefined, 'panel');
    panel.appendChild(el('h2', (step.step + 1) + '. ' + step.symbol));
    if (step.result.cell) panel.appendChild(el('p', step.result.cell, 'cell'));
    panel.appendChild(body(step.result));
    grid.appendChild(panel);
  });
  app.appendChild(grid);
  var next = el('div', undefined, 'next');
  next.appendChild(el('h2', 'Suggested next steps'));
  bundle.next_steps.terminals.forEach(function (t) {
    var b = el('button', t); b.disabled = true; next.appendChild(b);
  });
  if (bundle.next_steps.can_end) next.appendChild(el('p', 'The dialogue may end here.'));
  app.appendChild(next);
  if (bundle.parse_tree) {
    var byId = {};
    bundle.parse_tree.forEach(function (n) { byId[n.id] = n; });
    var lines = [];
    (function walk(id, depth) {
      var n = byId[id];
      lines.push(Array(depth + 1).join('  ') + n.symbol +
                 (n.kind === 'terminal' ? ' [terminal]' : ''));
      (n.children || []).forEach(function (c) { walk(c, depth + 1); });
    })(0, 0);
    app.appendChild(el('h2', 'Parse tree'));
    app.appendChild(el('pre', lines.join('\n'), 'tree'));
  }
})();
)JS";

constexpr std::string_view kStyle =
    "body{font-family:sans-serif;margin:1.5em;color:#222}"
    ".grid{display:grid;grid-template-columns:repeat(auto-fill,minmax(340px,"
    "1fr));"
    "gap:1em}.panel{border:1px solid #ccc;border-radius:4px;padding:.5em 1em}"
    ".panel h2{font-size:1.05em}.cell{color:#777;font-size:.85em}"
    "td{padding:0 .6em;font-size:.85em}.next button{margin:.2em}"
    ".tree{background:#f6f6f6;padding:.5em}";

std::string HtmlEscape(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Keeps inline script text from closing its element early.
std::string InlineScript(std::string_view script) {
  std::string out(script);
  for (size_t at = out.find("</"); at != std::string::npos;
       at = out.find("</", at + 3)) {
    out.replace(at, 2, "<\\/");
  }
  return out;
}

constexpr std::string_view kOpenData =
    R"(<script type="application/json" id="iema-data">)";
constexpr std::string_view kCloseScript = "</script>";

}  // namespace

std::string_view BuiltinViewerScript() { return kViewer; }

absl::StatusOr<std::string> ExportHtml(std::string_view bundle_text,
                                       std::string_view ui_script) {
  ASSIGN_OR_RETURN(const nlohmann::json bundle,
                   session::ParseBundle(bundle_text));
  const std::string data = session::SerializeBundle(bundle);
  const std::string title = HtmlEscape(
      fmt::format("IEMA: {} / {}", bundle["dataset"]["name"].get<std::string>(),
                  bundle["model"]["id"].get<std::string>()));
  return fmt::format(
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
      "<title>{}</title>\n<style>{}</style>\n</head>\n<body>\n"
      "<div id=\"app\"></div>\n{}{}{}\n<script>{}</script>\n</body>\n</html>\n",
      title, kStyle, kOpenData, data, kCloseScript,
      InlineScript(ui_script.empty() ? kViewer : ui_script));
}

absl::StatusOr<std::string> ExtractBundle(std::string_view html) {
  const size_t open = html.find(kOpenData);
  if (open == std::string_view::npos) {
    return absl::NotFoundError("no iema-data element in the document");
  }
  const size_t begin = open + kOpenData.size();
  const size_t end = html.find(kCloseScript, begin);
  if (end == std::string_view::npos) {
    return absl::InvalidArgumentError("unterminated iema-data element");
  }
  return std::string(html.substr(begin, end - begin));
}

}  // namespace iema::interface
