//! The `.g2cat` catalog file format: a line-oriented sectioned text format
//! declaring charts, scalars, 1-forms, vector fields, coordinate maps, and
//! check references. The built-in catalog can be exported to it and loaded
//! back.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::catalog::RunMode;
use crate::chart::Chart;
use crate::constant::Constant;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::exterior::{CoordMap, DiffForm, MapComponent, VectorField};
use crate::parse::{format_expr, parse_expr};

#[derive(Clone, Debug)]
pub struct CheckRef {
    pub id: String,
    pub title: String,
    pub anchor: String,
    pub modes: Vec<RunMode>,
    pub procedure: String,
}

#[derive(Default)]
pub struct Catalog {
    pub mode: Option<RunMode>,
    pub charts: BTreeMap<String, Arc<Chart>>,
    pub scalars: BTreeMap<String, Expr>,
    pub forms: BTreeMap<String, DiffForm>,
    pub fields: BTreeMap<String, VectorField>,
    pub maps: BTreeMap<String, CoordMap>,
    pub checks: Vec<CheckRef>,
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

fn err(no: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError {
        line: no,
        col: 1,
        msg: msg.into(),
    }
}

/// Parse a `.g2cat` document.
pub fn load_catalog(text: &str) -> Result<Catalog> {
    let mut cat = Catalog::default();
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            text: l,
        })
        .collect();
    let mut i = 0usize;
    // pending inverse links resolved at the end
    let mut inverse_links: Vec<(String, String, usize)> = Vec::new();
    while i < lines.len() {
        let raw = lines[i].text.trim();
        if raw.is_empty() || raw.starts_with('#') {
            i += 1;
            continue;
        }
        if !raw.starts_with('[') || !raw.ends_with(']') {
            return Err(err(lines[i].no, "expected a section header"));
        }
        let header = &raw[1..raw.len() - 1];
        let words: Vec<&str> = header.split_whitespace().collect();
        // collect the body (key = value lines until the next header)
        let mut body: Vec<(usize, String, String)> = Vec::new();
        let mut j = i + 1;
        while j < lines.len() {
            let t = lines[j].text.trim();
            if t.starts_with('[') {
                break;
            }
            if !t.is_empty() && !t.starts_with('#') {
                let Some(eq) = t.find('=') else {
                    return Err(err(lines[j].no, "expected `key = value`"));
                };
                body.push((
                    lines[j].no,
                    t[..eq].trim().to_string(),
                    t[eq + 1..].trim().to_string(),
                ));
            }
            j += 1;
        }
        match words.first().copied() {
            Some("mode") => {
                for (no, k, v) in &body {
                    if k == "value" {
                        cat.mode = Some(v.parse().map_err(|_| err(*no, "unknown mode"))?);
                    }
                }
            }
            Some("chart") => {
                let name = words
                    .get(1)
                    .ok_or_else(|| err(lines[i].no, "chart needs a name"))?;
                let mut vars: Vec<String> = Vec::new();
                let mut roots: Vec<String> = Vec::new();
                let mut constants: Vec<String> = Vec::new();
                for (no, k, v) in &body {
                    let list = || -> Vec<String> {
                        v.split(',')
                            .map(|s| s.trim().to_string())
                            .filter(|s| !s.is_empty())
                            .collect()
                    };
                    match k.as_str() {
                        "vars" => vars = list(),
                        "roots" => roots = list(),
                        "constants" => constants = list(),
                        _ => return Err(err(*no, format!("unknown chart key `{}`", k))),
                    }
                }
                if vars.is_empty() {
                    return Err(err(lines[i].no, "chart needs vars"));
                }
                let mode = cat
                    .mode
                    .ok_or_else(|| err(lines[i].no, "declare [mode] before charts"))?
                    .const_mode();
                let vref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
                let mut chart = if roots.is_empty() {
                    Chart::new(name, &vref, &mode)
                } else {
                    let rref: Vec<&str> = roots.iter().map(|s| s.as_str()).collect();
                    Chart::with_roots(name, &vref, &rref, &mode)
                };
                if !constants.is_empty() {
                    let mut c = (*chart).clone();
                    for k in &constants {
                        let idx = c
                            .vars
                            .iter()
                            .position(|v| v == k)
                            .ok_or_else(|| err(lines[i].no, "constant not among vars"))?;
                        c.constant[idx] = true;
                    }
                    chart = Arc::new(c);
                }
                cat.charts.insert(name.to_string(), chart);
            }
            Some("scalar") | Some("oneform") | Some("field") => {
                let kind = words[0];
                let name = *words
                    .get(1)
                    .ok_or_else(|| err(lines[i].no, "object needs a name"))?;
                if words.get(2) != Some(&"@") {
                    return Err(err(lines[i].no, "expected `@ chart`"));
                }
                let chart_name = *words
                    .get(3)
                    .ok_or_else(|| err(lines[i].no, "expected a chart name"))?;
                let chart = cat
                    .charts
                    .get(chart_name)
                    .ok_or_else(|| Error::DanglingReference(chart_name.to_string()))?
                    .clone();
                match kind {
                    "scalar" => {
                        let mut value = None;
                        for (no, k, v) in &body {
                            if k == "value" {
                                value = Some(parse_expr(v, &chart).map_err(|e| {
                                    err(*no, format!("{}", e))
                                })?);
                            }
                        }
                        let value =
                            value.ok_or_else(|| err(lines[i].no, "scalar needs a value"))?;
                        cat.scalars.insert(name.to_string(), value);
                    }
                    "oneform" => {
                        let mut form = DiffForm::zero(&chart, 1);
                        for (no, k, v) in &body {
                            let var = k
                                .strip_prefix("d ")
                                .ok_or_else(|| err(*no, "one-form keys look like `d x`"))?;
                            let idx = chart
                                .index_of(var.trim())
                                .map_err(|_| Error::DanglingReference(var.to_string()))?;
                            let e = parse_expr(v, &chart).map_err(|e| err(*no, e.to_string()))?;
                            if !e.is_zero() {
                                form.comps.insert(vec![idx], e);
                            }
                        }
                        cat.forms.insert(name.to_string(), form);
                    }
                    _ => {
                        let mut field = VectorField::zero(&chart);
                        for (no, k, v) in &body {
                            let var = k
                                .strip_prefix("d/d ")
                                .ok_or_else(|| err(*no, "field keys look like `d/d x`"))?;
                            let idx = chart
                                .index_of(var.trim())
                                .map_err(|_| Error::DanglingReference(var.to_string()))?;
                            field.comps[idx] =
                                parse_expr(v, &chart).map_err(|e| err(*no, e.to_string()))?;
                        }
                        cat.fields.insert(name.to_string(), field);
                    }
                }
            }
            Some("map") => {
                // [map name : src -> dst]
                let rest = header.strip_prefix("map").unwrap().trim();
                let (name, arrow) = rest
                    .split_once(':')
                    .ok_or_else(|| err(lines[i].no, "expected `map name : src -> dst`"))?;
                let (src, dst) = arrow
                    .split_once("->")
                    .ok_or_else(|| err(lines[i].no, "expected `src -> dst`"))?;
                let name = name.trim();
                let src = cat
                    .charts
                    .get(src.trim())
                    .ok_or_else(|| Error::DanglingReference(src.trim().to_string()))?
                    .clone();
                let dst = cat
                    .charts
                    .get(dst.trim())
                    .ok_or_else(|| Error::DanglingReference(dst.trim().to_string()))?
                    .clone();
                let mut comps: Vec<Option<MapComponent>> = vec![None; dst.dim()];
                let mut inverse: Option<String> = None;
                for (no, k, v) in &body {
                    if k == "inverse" {
                        inverse = Some(v.clone());
                        continue;
                    }
                    let idx = dst
                        .index_of(k)
                        .map_err(|_| Error::DanglingReference(k.to_string()))?;
                    comps[idx] = Some(parse_map_component(v, &src).map_err(|e| {
                        err(*no, e.to_string())
                    })?);
                }
                let comps: Result<Vec<MapComponent>> = comps
                    .into_iter()
                    .enumerate()
                    .map(|(j, c)| {
                        c.or_else(|| {
                            // formal constants default to themselves
                            if dst.constant[j] {
                                Some(MapComponent::plain(Expr::var(&src, j)))
                            } else {
                                None
                            }
                        })
                        .ok_or_else(|| {
                            err(lines[i].no, format!("missing component `{}`", dst.vars[j]))
                        })
                    })
                    .collect();
                let map = CoordMap::new(name, &src, &dst, comps?)?;
                if let Some(invname) = inverse {
                    inverse_links.push((name.to_string(), invname, lines[i].no));
                }
                cat.maps.insert(name.to_string(), map);
            }
            Some("check") => {
                let id = *words
                    .get(1)
                    .ok_or_else(|| err(lines[i].no, "check needs an id"))?;
                let mut title = String::new();
                let mut anchor = String::new();
                let mut modes = Vec::new();
                let mut procedure = String::new();
                for (no, k, v) in &body {
                    match k.as_str() {
                        "title" => title = v.clone(),
                        "anchor" => anchor = v.clone(),
                        "modes" => {
                            for m in v.split(',') {
                                modes.push(
                                    m.trim()
                                        .parse()
                                        .map_err(|_| err(*no, "unknown mode"))?,
                                );
                            }
                        }
                        "procedure" => procedure = v.clone(),
                        _ => return Err(err(*no, format!("unknown check key `{}`", k))),
                    }
                }
                // the procedure must name a built-in check
                crate::checks::find_check(&procedure)
                    .map_err(|_| Error::DanglingReference(procedure.clone()))?;
                cat.checks.push(CheckRef {
                    id: id.to_string(),
                    title,
                    anchor,
                    modes,
                    procedure,
                });
            }
            other => {
                return Err(err(
                    lines[i].no,
                    format!("unknown section `{}`", other.unwrap_or("")),
                ))
            }
        }
        i = j;
    }
    // resolve inverse links (verified on attach)
    for (name, invname, no) in inverse_links {
        let inv = cat
            .maps
            .get(&invname)
            .ok_or(Error::DanglingReference(invname.clone()))?
            .clone();
        let map = cat.maps.remove(&name).ok_or_else(|| err(no, "map vanished"))?;
        let linked = map.with_inverse(inv)?;
        cat.maps.insert(name, linked);
    }
    Ok(cat)
}

/// Map components: `expr` optionally plus `c * log(expr)` terms at the top
/// level.
fn parse_map_component(text: &str, chart: &Arc<Chart>) -> Result<MapComponent> {
    // split on top-level + and - while tracking parentheses
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for (k, ch) in text.chars().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && k > 0 && !cur.trim().is_empty() && !cur.trim_end().ends_with(['*', '/', '^', '(']) => {
                terms.push((neg, cur.clone()));
                cur.clear();
                neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        terms.push((neg, cur));
    }
    let mut plain = Expr::zero(chart);
    let mut logs: Vec<(Constant, Expr)> = Vec::new();
    for (negated, t) in terms {
        let t = t.trim();
        if let Some(pos) = find_log(t) {
            // coefficient * log(arg)
            let (coef_text, log_part) = t.split_at(pos);
            let coef_text = coef_text.trim().trim_end_matches('*').trim();
            let coef_expr = if coef_text.is_empty() {
                Expr::one(chart)
            } else {
                parse_expr(coef_text, chart)?
            };
            let coef = coef_expr
                .constant_value()
                .ok_or_else(|| Error::NonLinearExponent("log coefficient must be constant".into()))?;
            let coef = if negated { coef.neg() } else { coef };
            let inner = log_part
                .strip_prefix("log(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::NonLinearExponent("malformed log term".into()))?;
            logs.push((coef, parse_expr(inner, chart)?));
        } else {
            let e = parse_expr(t, chart)?;
            plain = if negated { plain.sub(&e)? } else { plain.add(&e)? };
        }
    }
    Ok(MapComponent::with_logs(plain, logs))
}

fn find_log(t: &str) -> Option<usize> {
    // a top-level `log(` not preceded by an alphanumeric character
    let bytes = t.as_bytes();
    let mut depth = 0usize;
    for i in 0..t.len() {
        match bytes[i] {
            b'(' => {
                if depth == 0 && i >= 3 && &t[i - 3..i] == "log" {
                    let before_ok = i == 3
                        || !t.as_bytes()[i - 4].is_ascii_alphanumeric();
                    if before_ok {
                        return Some(i - 3);
                    }
                }
                depth += 1;
            }
            b')' => depth = depth.saturating_sub(1),
            _ => {}
        }
    }
    None
}

/// Serialize a catalog deterministically.
pub fn save_catalog(cat: &Catalog) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "# generated catalog").unwrap();
    if let Some(m) = cat.mode {
        writeln!(out, "\n[mode]\nvalue = {}", m).unwrap();
    }
    for (name, ch) in &cat.charts {
        writeln!(out, "\n[chart {}]", name).unwrap();
        writeln!(out, "vars = {}", ch.vars.join(", ")).unwrap();
        let roots: Vec<&str> = ch
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| ch.root[*i])
            .map(|(_, v)| v.as_str())
            .collect();
        if !roots.is_empty() {
            writeln!(out, "roots = {}", roots.join(", ")).unwrap();
        }
        let consts: Vec<&str> = ch
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| ch.constant[*i])
            .map(|(_, v)| v.as_str())
            .collect();
        if !consts.is_empty() {
            writeln!(out, "constants = {}", consts.join(", ")).unwrap();
        }
    }
    for (name, e) in &cat.scalars {
        writeln!(out, "\n[scalar {} @ {}]", name, e.chart.name).unwrap();
        writeln!(out, "value = {}", format_expr(e)).unwrap();
    }
    for (name, f) in &cat.forms {
        writeln!(out, "\n[oneform {} @ {}]", name, f.chart.name).unwrap();
        for (k, e) in &f.comps {
            writeln!(out, "d {} = {}", f.chart.vars[k[0]], format_expr(e)).unwrap();
        }
    }
    for (name, f) in &cat.fields {
        writeln!(out, "\n[field {} @ {}]", name, f.chart.name).unwrap();
        for (i, e) in f.comps.iter().enumerate() {
            if !e.is_zero() {
                writeln!(out, "d/d {} = {}", f.chart.vars[i], format_expr(e)).unwrap();
            }
        }
    }
    for (name, m) in &cat.maps {
        writeln!(
            out,
            "\n[map {} : {} -> {}]",
            name, m.source.name, m.target.name
        )
        .unwrap();
        for (j, comp) in m.comps.iter().enumerate() {
            if m.target.constant[j] && comp.logs.is_empty() {
                // identity on formal constants is implied
                if let Some(lf) = comp.plain.as_linear_form() {
                    let idx = m.source.index_of(&m.target.vars[j]).ok();
                    if let Some(idx) = idx {
                        let is_identity = lf
                            .0
                            .iter()
                            .enumerate()
                            .all(|(v, c)| (v == idx) == c.is_one() || c.is_zero());
                        if is_identity {
                            continue;
                        }
                    }
                }
            }
            let mut rhs = format_expr(&comp.plain);
            for (l, g) in &comp.logs {
                let c = crate::expr::Expr::constant(&m.source, l.clone());
                rhs = format!("{} + {}*log({})", rhs, format_expr(&c), format_expr(g));
            }
            writeln!(out, "{} = {}", m.target.vars[j], rhs).unwrap();
        }
        if let Some(inv) = &m.inverse {
            // reference by catalog entry name when available
            let link = cat
                .maps
                .iter()
                .find(|(_, other)| other.name == inv.name)
                .map(|(k, _)| k.clone());
            if let Some(link) = link {
                writeln!(out, "inverse = {}", link).unwrap();
            }
        }
    }
    for c in &cat.checks {
        writeln!(out, "\n[check {}]", c.id).unwrap();
        writeln!(out, "title = {}", c.title).unwrap();
        writeln!(out, "anchor = {}", c.anchor).unwrap();
        let modes: Vec<String> = c.modes.iter().map(|m| m.to_string()).collect();
        writeln!(out, "modes = {}", modes.join(", ")).unwrap();
        writeln!(out, "procedure = {}", c.procedure).unwrap();
    }
    out
}

/// Register a map and its embedded inverse as two linked entries.
fn insert_with_inverse(cat: &mut Catalog, name: &str, invname: &str, map: &CoordMap) {
    if let Some(inv) = &map.inverse {
        let mut standalone = (**inv).clone();
        standalone.inverse = None;
        cat.maps.insert(invname.to_string(), standalone);
    }
    cat.maps.insert(name.to_string(), map.clone());
}

/// Assemble the built-in catalog for a mode.
pub fn builtin_catalog(mode: RunMode) -> Result<Catalog> {
    let cm = mode.const_mode();
    let mut cat = Catalog {
        mode: Some(mode),
        ..Default::default()
    };
    // flat model
    let c = crate::catalog::flat::c_presentation(&cm)?;
    let a = crate::catalog::flat::a_presentation(&cm, &c)?;
    cat.charts.insert(c.chart.name.clone(), c.chart.clone());
    cat.charts.insert(a.chart.name.clone(), a.chart.clone());
    for (i, f) in c.theta.iter().enumerate() {
        cat.forms.insert(format!("Theta{}", i + 1), f.clone());
    }
    for (i, f) in a.theta.iter().enumerate() {
        cat.forms.insert(format!("theta{}", i + 1), f.clone());
    }
    for (i, z) in c.z.iter().enumerate() {
        cat.fields.insert(format!("Z{}", i + 1), z.clone());
    }
    for (i, s) in c.s.iter().enumerate() {
        cat.fields.insert(format!("S{}", i + 1), s.clone());
    }
    for (i, r) in c.r_funcs.iter().enumerate() {
        cat.scalars.insert(format!("r{}", i + 1), r.clone());
    }
    insert_with_inverse(&mut cat, "flat_a_to_c", "flat_c_to_a", &a.to_c);
    cat.maps.insert("rescale".into(), a.rescale.clone());
    // quadratic model
    let h = crate::catalog::hc::hilbert_cartan(&cm, &a, &c)?;
    cat.charts.insert(h.chart.name.clone(), h.chart.clone());
    for (i, w) in h.omega.iter().enumerate() {
        cat.forms.insert(format!("hc_w{}", i + 1), w.clone());
    }
    insert_with_inverse(&mut cat, "hc_to_a", "a_to_hc", &h.to_a);
    insert_with_inverse(&mut cat, "hc_to_c", "c_to_hc", &h.to_c);
    for (i, z) in h.z_printed.iter().enumerate() {
        cat.fields.insert(format!("hc_Z{}", i + 1), z.clone());
    }
    for (i, s) in h.s_printed.iter().enumerate() {
        cat.fields.insert(format!("hc_S{}", i + 1), s.clone());
    }
    // rolling model
    let roll = crate::catalog::rolling::roll_chart("roll", &cm);
    let r = crate::catalog::rolling::rolling_model(&roll, &Constant::alpha(&cm))?;
    cat.charts.insert(roll.name.clone(), roll.clone());
    for (i, f) in r.sigma.iter().enumerate() {
        cat.forms.insert(format!("sigma{}", i + 1), f.clone());
    }
    for (i, f) in r.omega.iter().enumerate() {
        cat.forms.insert(format!("w{}", i + 1), f.clone());
    }
    for (i, f) in r.t_forms.iter().enumerate() {
        cat.forms.insert(format!("t{}", i + 1), f.clone());
    }
    for (i, f) in r.e_fields.iter().enumerate() {
        cat.fields.insert(format!("E{}", i + 1), f.clone());
    }
    cat.fields.insert("X1".into(), r.x1.clone());
    cat.fields.insert("X2".into(), r.x2.clone());
    // passage to the normal form (generic parameter only)
    if mode == RunMode::Generic {
        let hat = crate::catalog::rolling::hat_passage(&roll)?;
        let bar = crate::catalog::rolling::bar_passage(&roll, &hat)?;
        cat.charts
            .insert(hat.hat_chart.name.clone(), hat.hat_chart.clone());
        cat.charts
            .insert(bar.bar_chart.name.clone(), bar.bar_chart.clone());
        insert_with_inverse(&mut cat, "roll_to_hat", "hat_to_roll", &hat.to_hat);
        insert_with_inverse(&mut cat, "hat_to_bar", "bar_to_hat", &bar.to_bar);
        cat.maps.insert("roll_to_bar".into(), bar.direct.clone());
        cat.scalars.insert("F".into(), bar.f_generic.clone());
        for (i, f) in bar.omega_bar.iter().enumerate() {
            cat.forms.insert(format!("bw{}", i + 1), f.clone());
        }
        let cs = crate::catalog::rolling::c_map_ninth(&roll)?;
        for (i, e) in cs.iter().enumerate() {
            cat.scalars.insert(format!("c{}_first", i + 1), e.clone());
        }
        let cs9 =
            crate::catalog::rolling::c_map_nine(&roll, crate::catalog::rolling::NINE_RECONCILED)?;
        for (i, e) in cs9.iter().enumerate() {
            cat.scalars.insert(format!("c{}_second", i + 1), e.clone());
        }
        // the first-branch Monge chart and its passage
        let mn = crate::catalog::monge::monge_ninth(&cm, &a)?;
        cat.charts.insert(mn.chart.name.clone(), mn.chart.clone());
        for (i, f) in mn.omega.iter().enumerate() {
            cat.forms.insert(format!("mw{}", i + 1), f.clone());
        }
        cat.maps.insert("monge_ninth_to_a".into(), mn.to_a.clone());
        // exchange maps
        let p9 = crate::catalog::monge::monge_ninth_plain(&cm)?;
        let n9 = crate::catalog::monge::monge_nine(&cm)?;
        cat.charts.insert(p9.chart.name.clone(), p9.chart.clone());
        cat.charts.insert(n9.chart.name.clone(), n9.chart.clone());
        cat.maps.insert(
            "exchange_first".into(),
            crate::catalog::monge::exchange_map_first(&p9, &n9)?,
        );
        cat.maps.insert(
            "exchange_second".into(),
            crate::catalog::monge::exchange_map_second(&p9, &n9, true)?,
        );
        cat.maps
            .insert("self_map".into(), crate::catalog::monge::self_map(&p9)?);
    }
    // literal parameter extras
    if matches!(mode, RunMode::LitI3Pos | RunMode::LitI3Neg) {
        let cs = crate::catalog::rolling::c_map_ninth_literal(&roll, mode.plus())?;
        for (i, e) in cs.iter().enumerate() {
            cat.scalars.insert(format!("c{}", i + 1), e.clone());
        }
        let printed = crate::catalog::rolling::printed_fields_ninth(&roll, &r, mode.plus())?;
        for (i, z) in printed.z.iter().enumerate() {
            cat.fields.insert(format!("roll_Z{}", i + 1), z.clone());
        }
        for (i, s) in printed.s.iter().enumerate() {
            cat.fields.insert(format!("roll_S{}", i + 1), s.clone());
        }
    }
    if matches!(mode, RunMode::Lit3IPos | RunMode::Lit3INeg) {
        let cs = crate::catalog::rolling::c_map_nine_literal(&roll, mode.plus())?;
        for (i, e) in cs.iter().enumerate() {
            cat.scalars.insert(format!("c{}", i + 1), e.clone());
        }
        let x3 = crate::catalog::rolling::x3_field(&r, false)?;
        cat.fields.insert("X3".into(), x3.clone());
        let printed =
            crate::catalog::rolling::printed_fields_nine(&roll, &r, mode.plus(), &x3)?;
        for (i, s) in printed.s.iter().enumerate() {
            cat.fields.insert(format!("roll_S{}", i + 1), s.clone());
        }
    }
    // checks
    for def in crate::checks::all_checks() {
        cat.checks.push(CheckRef {
            id: def.id.to_string(),
            title: def.title.to_string(),
            anchor: def.anchor.to_string(),
            modes: def.modes.to_vec(),
            procedure: def.id.to_string(),
        });
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_catalog() {
        let cat = load_catalog("").unwrap();
        assert!(cat.checks.is_empty());
        assert!(cat.charts.is_empty());
    }

    #[test]
    fn dangling_chart_reference() {
        let text = "[mode]\nvalue = generic\n\n[oneform w @ nowhere]\nd x = 1\n";
        match load_catalog(text) {
            Err(Error::DanglingReference(r)) => assert_eq!(r, "nowhere"),
            other => panic!("expected dangling reference, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn builtin_has_nineteen_checks() {
        let cat = builtin_catalog(RunMode::Generic).unwrap();
        assert_eq!(cat.checks.len(), 19);
        let text = save_catalog(&cat);
        let back = load_catalog(&text).unwrap();
        assert_eq!(back.checks.len(), 19);
    }

    #[test]
    fn export_roundtrip_stable() {
        let cat = builtin_catalog(RunMode::LitI3Pos).unwrap();
        let text = save_catalog(&cat);
        let back = load_catalog(&text).unwrap();
        let text2 = save_catalog(&back);
        assert_eq!(text, text2);
    }

    #[test]
    fn map_component_with_log() {
        let mode = RunMode::Generic.const_mode();
        let src = Chart::new("s", &["u", "v"], &mode);
        let comp = parse_map_component("u^2 + 1/2*log(u*v) - 3*log(v)", &src).unwrap();
        assert_eq!(comp.logs.len(), 2);
        assert!(!comp.plain.is_zero());
    }
}
