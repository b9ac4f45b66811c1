use std::collections::BTreeMap;

use rankgauge::estimators::{
    estimate_for_review, sample_seed_pairs, EstimatorKind, EstimatorResources,
};
use rankgauge::eval::{spearman, sr_quality, synth_generate, SynthConfig};
use rankgauge::rankers::Bm25Ranker;

fn family(seed: u64, overlap: f64, n: usize, prefix: &str, size: Option<(usize, usize)>) -> Vec<rankgauge::ingest::SystematicReview> {
    synth_generate(&SynthConfig {
        n_srs: n,
        overlap,
        seed,
        sr_id_prefix: prefix.to_string(),
        docs_per_sr_range: size,
        ..Default::default()
    })
    .unwrap()
}

fn tb_and_ap(reviews: &[rankgauge::ingest::SystematicReview], master: u64) -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) {
    let resources = EstimatorResources::default();
    let ranker = Bm25Ranker::default();
    let mut tb = Vec::new();
    let mut ss = Vec::new();
    let mut sc = Vec::new();
    let mut ap = Vec::new();
    for sr in reviews {
        let pairs = sample_seed_pairs(sr, 30, master).unwrap();
        tb.push(estimate_for_review(EstimatorKind::TopicBroadness, sr, &pairs, &resources, master).unwrap().mean);
        ss.push(estimate_for_review(EstimatorKind::TbNoSeedSim, sr, &pairs, &resources, master).unwrap().mean);
        sc.push(estimate_for_review(EstimatorKind::TbNoCandSim, sr, &pairs, &resources, master).unwrap().mean);
        ap.push(sr_quality(sr, &ranker).unwrap().mean_ap);
    }
    (tb, ss, sc, ap)
}

#[test]
fn tune_criterion4() {
    for master in [1u64, 2, 3] {
        let narrow = family(master, 0.9, 50, "NAR", None);
        let broad = family(master.wrapping_add(1000), 0.1, 50, "BRD", None);
        let (tb_n, _, _, ap_n) = tb_and_ap(&narrow, master);
        let (tb_b, _, _, ap_b) = tb_and_ap(&broad, master);
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let neg = |v: &[f64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        println!("master {master}: -TB narrow {:.4} broad {:.4} | AP narrow {:.3} broad {:.3}",
            mean(&neg(&tb_n)), mean(&neg(&tb_b)), mean(&ap_n), mean(&ap_b));
        let all_tb: Vec<f64> = tb_n.iter().chain(&tb_b).copied().collect();
        let all_ap: Vec<f64> = ap_n.iter().chain(&ap_b).copied().collect();
        let rho = spearman(&all_tb, &all_ap).unwrap();
        println!("  spearman(TB, AP) = {:.3} (p {:.2e})", rho.value, rho.p_value);
    }
}

#[test]
fn tune_criterion5() {
    for master in [11u64, 22, 33, 44, 55, 66, 77, 88] {
        // lambda grid x size spread
        let mut reviews = Vec::new();
        for (gi, overlap) in [0.5].iter().enumerate() {
            reviews.extend(synth_generate(&SynthConfig {
                n_srs: 56,
                overlap: *overlap,
                seed: master.wrapping_mul(31).wrapping_add(gi as u64),
                sr_id_prefix: format!("G{gi}-"),
                docs_per_sr_range: Some((24, 400)),
                distractor_topic_mass: 0.45,
                doc_len_jitter: 0.45,
                ..Default::default()
            }).unwrap());
        }
        let (tb, ss, sc, ap) = tb_and_ap(&reviews, master);
        let r_tb = spearman(&tb, &ap).unwrap().value;
        let r_ss = spearman(&ss, &ap).unwrap().value;
        let r_sc = spearman(&sc, &ap).unwrap().value;
        println!(
            "master {master}: |rho| full {:.3} dropSS {:.3} dropSC {:.3}  (raw {:.3} {:.3} {:.3})",
            r_tb.abs(), r_ss.abs(), r_sc.abs(), r_tb, r_ss, r_sc
        );
    }
}
