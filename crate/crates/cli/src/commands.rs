//! Subcommands. Each returns its text and JSON renderings; [`dispatch`]
//! picks one.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use pillowcase::fgroup::{fixed_classes, induced};
use pillowcase::mcg::{MappingClass, MonodromyWord};
use pillowcase::pslz::PslWord;
use pillowcase::quot::{fingerprint, separating_witness, Certificate, QuotientFingerprint, WitnessOutcome};
use pillowcase::{torus, Budget};
use serde_json::{json, Value};

use crate::cache::{fingerprint_json, FingerprintCache};
use crate::distinguish::{distinguish, Verdict};
use crate::{exit, Command, Outcome, RunConfig};

struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: exit::OK }
    }
}

pub fn dispatch(command: &Command, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let (name, report) = match command {
        Command::Nf { word } => ("nf", nf(word)?),
        Command::Conj { first, second } => ("conj", conj(first, second)?),
        Command::Pa { word } => ("pa", pa(word)?),
        Command::Aut { word } => ("aut", aut(word)?),
        Command::Fixed { word } => ("fixed", fixed(word, cfg)?),
        Command::Torus { word } => ("torus", torus_cmd(word)?),
        Command::Spectrum { word } => ("spectrum", spectrum(word, cfg)?),
        Command::Witness { first, second } => ("witness", witness(first, second, cfg)?),
        Command::Distinguish { first, second } => ("distinguish", distinguish_cmd(first, second, cfg)?),
    };
    let stdout = if cfg.json {
        let mut v = report.json;
        let obj = v.as_object_mut().expect("reports are JSON objects");
        obj.insert("schema".into(), json!(1));
        obj.insert("command".into(), json!(name));
        if !cfg.stable {
            let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            obj.insert("timestamp".into(), json!(now));
        }
        serde_json::to_string_pretty(&v)? + "\n"
    } else {
        report.text
    };
    Ok(Outcome { stdout, code: report.code })
}

fn word(s: &str) -> anyhow::Result<MonodromyWord> {
    Ok(s.parse::<MonodromyWord>()?)
}

fn class_json(g: &MappingClass) -> Value {
    json!({ "psl": g.psl().to_string(), "klein": [g.vector()[0], g.vector()[1]] })
}

fn punctures(p: [usize; 4]) -> String {
    p.iter().enumerate().map(|(i, j)| format!("{}->{}", i + 1, j + 1)).collect::<Vec<_>>().join(" ")
}

fn nf(s: &str) -> anyhow::Result<Report> {
    let w: PslWord = s.parse()?;
    let m = w.to_matrix();
    let [a, b, c, d] = m.entries();
    let json = json!({
        "input": s,
        "normal_form": w.to_string(),
        "matrix": [[a.to_string(), b.to_string()], [c.to_string(), d.to_string()]],
        "trace_abs": w.trace_abs().to_string(),
        "order": w.order(),
    });
    Ok(Report::ok(format!("{w}\n"), json))
}

fn conj(s1: &str, s2: &str) -> anyhow::Result<Report> {
    let (g, h) = (word(s1)?.eval(), word(s2)?.eval());
    Ok(match g.conjugator_up_to_inversion(&h) {
        Some((sign, k)) => Report::ok(
            format!("CONJUGATE\nsign {sign}\nwitness {k}\n"),
            json!({ "conjugate": true, "sign": sign.to_string(), "witness": class_json(&k) }),
        ),
        None => Report::ok("NOT_CONJUGATE\n".into(), json!({ "conjugate": false })),
    })
}

fn pa(s: &str) -> anyhow::Result<Report> {
    let g = word(s)?.eval();
    let trace = g.psl().trace_abs();
    let (label, kind) = if g.is_pseudo_anosov() {
        ("PSEUDO_ANOSOV", "pseudo-Anosov".to_string())
    } else if let Some(k) = g.psl().order() {
        ("NOT_PSEUDO_ANOSOV", format!("periodic (PSL order {k})"))
    } else {
        ("NOT_PSEUDO_ANOSOV", "reducible".to_string())
    };
    let perm = g.puncture_permutation();
    let text = format!("{label}\nclass {g}\ntrace {trace}\ntype {kind}\npunctures {}\n", punctures(perm));
    let json = json!({
        "pseudo_anosov": g.is_pseudo_anosov(),
        "class": class_json(&g),
        "trace_abs": trace.to_string(),
        "type": kind,
        "puncture_permutation": perm.map(|j| j + 1),
    });
    Ok(Report::ok(text, json))
}

fn aut(s: &str) -> anyhow::Result<Report> {
    let w = word(s)?;
    let alpha = induced(&w);
    let perm = w.eval().puncture_permutation();
    let ab = alpha.abelianization();
    let mut text = format!("{alpha}\npunctures {}\n", punctures(perm));
    for row in &ab {
        writeln!(text, "{} {} {}", row[0], row[1], row[2])?;
    }
    let json = json!({
        "images": alpha.images().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "inverse_images": alpha.inverse_images().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "puncture_permutation": perm.map(|j| j + 1),
        "abelianization": ab,
    });
    Ok(Report::ok(text, json))
}

fn fixed(s: &str, cfg: &RunConfig) -> anyhow::Result<Report> {
    let alpha = induced(&word(s)?);
    let res = fixed_classes(&alpha, cfg.len as usize, cfg.powers)?;
    let mut text = String::new();
    for c in &res.classes {
        let kind = if c.peripheral { "peripheral" } else { "non-peripheral" };
        writeln!(text, "{} power {} {kind}", c.word, c.power)?;
    }
    writeln!(
        text,
        "oriented {} unoriented {} peripheral {} non-peripheral {} (examined {})",
        res.oriented_count(),
        res.unoriented_count(),
        res.peripheral_unoriented(),
        res.nonperipheral_unoriented(),
        res.enumerated
    )?;
    let classes: Vec<Value> = res
        .classes
        .iter()
        .map(|c| json!({ "word": c.word.to_string(), "power": c.power, "peripheral": c.peripheral }))
        .collect();
    let json = json!({
        "len": cfg.len,
        "powers": cfg.powers,
        "classes": classes,
        "oriented": res.oriented_count(),
        "unoriented": res.unoriented_count(),
        "peripheral_unoriented": res.peripheral_unoriented(),
        "nonperipheral_unoriented": res.nonperipheral_unoriented(),
        "examined": res.enumerated,
    });
    Ok(Report::ok(text, json))
}

fn torus_cmd(s: &str) -> anyhow::Result<Report> {
    let w = word(s)?;
    let p = torus::presentation(&w);
    let h = p.homology();
    let text = format!("{p}\nH1 {h}\nfibered norm {}\n", torus::fibered_norm());
    let json = json!({
        "presentation": p.to_string(),
        "homology": h.to_string(),
        "rank": h.rank,
        "torsion": h.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "fibered_norm": torus::fibered_norm(),
    });
    Ok(Report::ok(text, json))
}

/// Fingerprint of the mapping torus, through the cache when one is set.
pub fn cached_fingerprint(w: &MonodromyWord, cfg: &RunConfig) -> anyhow::Result<QuotientFingerprint> {
    let (catalog, catalog_text) = cfg.catalog()?;
    let p = torus::presentation(w);
    let cache = cfg.cache.as_deref().map(FingerprintCache::open).transpose()?;
    let key = FingerprintCache::key(&p.to_string(), &catalog_text);
    if let Some(fp) = cache.as_ref().and_then(|c| c.load(&key, &catalog)) {
        return Ok(fp);
    }
    let fp = fingerprint(&p, &catalog, &cfg.budget())?;
    if let (Some(c), true) = (&cache, fp.is_complete()) {
        c.store(&key, &fp)?;
    }
    Ok(fp)
}

fn spectrum(s: &str, cfg: &RunConfig) -> anyhow::Result<Report> {
    let fp = cached_fingerprint(&word(s)?, cfg)?;
    let mut text = format!("catalog {}\n", fp.catalog_id);
    for (name, c) in &fp.counts {
        writeln!(text, "{name} {}", c.map_or_else(|| "unknown".to_string(), |c| c.to_string()))?;
    }
    let code = if fp.is_complete() { exit::OK } else { exit::INCONCLUSIVE };
    Ok(Report { text, json: fingerprint_json(&fp), code })
}

pub fn certificate_json(c: &Certificate) -> Value {
    let body = match c {
        Certificate::TorusHomology { first, second } => {
            json!({ "kind": "torus_homology", "first": first.to_string(), "second": second.to_string() })
        }
        Certificate::TorusSurjections { target, kind, counts } => {
            json!({ "kind": "torus_surjections", "target": target, "group": kind.to_string(), "counts": counts })
        }
        Certificate::CongruenceOrder { spec, orders } => json!({
            "kind": "congruence_order",
            "quotient": spec.to_string(),
            "orders": orders.map(|o| o.to_string()),
        }),
    };
    let mut body = body;
    body["separates_bundles"] = json!(c.separates_bundles());
    body["text"] = json!(c.to_string());
    body
}

fn witness(s1: &str, s2: &str, cfg: &RunConfig) -> anyhow::Result<Report> {
    let (w1, w2) = (word(s1)?, word(s2)?);
    let (catalog, _) = cfg.catalog()?;
    let budget = cfg.budget();
    Ok(match separating_witness(&w1, &w2, &catalog, cfg.index as usize, &budget)? {
        WitnessOutcome::Separated(c) => {
            let replayed = c.replay(&w1, &w2, &catalog, &Budget::unlimited())?;
            let scope = if c.separates_bundles() { "bundles" } else { "monodromies" };
            Report {
                text: format!("SEPARATED\n{c}\nseparates {scope}\nreplay {}\n", if replayed { "ok" } else { "FAILED" }),
                json: json!({ "separated": true, "certificate": certificate_json(&c), "replayed": replayed }),
                code: if replayed { exit::OK } else { exit::FAILURE },
            }
        }
        WitnessOutcome::Exhausted(reason) => Report {
            text: format!("EXHAUSTED\n{reason}\n"),
            json: json!({ "separated": false, "reason": reason }),
            code: exit::INCONCLUSIVE,
        },
    })
}

fn distinguish_cmd(s1: &str, s2: &str, cfg: &RunConfig) -> anyhow::Result<Report> {
    let (w1, w2) = (word(s1)?, word(s2)?);
    let (catalog, _) = cfg.catalog()?;
    let v = distinguish(&w1, &w2, &catalog, &cfg.budget())?;
    let kind = v.kind();
    let (detail, json) = match &v {
        Verdict::Homeomorphic { sign, witness } => (
            format!("sign {sign}\nwitness {witness}\n"),
            json!({ "sign": sign.to_string(), "witness": class_json(witness) }),
        ),
        Verdict::Distinct { certificate } => {
            (format!("{certificate}\nreplay ok\n"), json!({ "certificate": certificate_json(certificate), "replayed": true }))
        }
        Verdict::Inconclusive { reason } => (format!("{reason}\n"), json!({ "reason": reason })),
        Verdict::NotPseudoAnosov { words } => (
            words.iter().map(|w| format!("{w} is not pseudo-Anosov\n")).collect(),
            json!({ "not_pseudo_anosov": words }),
        ),
    };
    let mut json = json;
    json["verdict"] = json!(kind.to_string());
    json["first"] = json!(s1);
    json["second"] = json!(s2);
    Ok(Report { text: format!("{kind}\n{detail}"), json, code: kind.exit_code() })
}
