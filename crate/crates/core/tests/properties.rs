mod common;

use std::collections::BTreeMap;
use std::sync::LazyLock;

use proptest::prelude::*;

use moodpipe::classify::{
    compute_metrics, stratified_folds, train_stage2, ConfusionMatrix, Pipeline, Sentiment3, Stage2Kind, Stage2Params,
    StageOnePoint, StageTwoModel,
};
use moodpipe::corpus::{filter_pipeline, jaccard, term_set, Corpus, FilterConfig, SearchParams, Tweet};
use moodpipe::features::{information_gain, Analyzer, Binning, UnigramClass, UnigramConfig, UnigramModel};
use moodpipe::labeling::{agreement, class_counts, majority_vote, AgreementMode, MergedLabel, SentimentLabel};
use moodpipe::lexicons::{mpqa_score, EmoticonLexicon, MpqaLexicon};
use moodpipe::scoring::{popularity_score, HourlyStat, ScoreConfig, StatsStore};
use moodpipe::text::{tokenize, TokenKind};

static TRAINED: LazyLock<(Analyzer, Pipeline)> = LazyLock::new(|| {
    let f = common::synthetic(60);
    let p = common::pipeline(&f);
    (f.analyzer, p)
});

const WORDS: &[&str] = &[
    "the", "weather", "is", "nice", "today", "great", "game", "phone", "city", "traffic", "slow", "love", "hate",
    "coffee", "morning", "news", "report", "new", "old", "we", "are", "going",
];

fn label() -> impl Strategy<Value = SentimentLabel> {
    prop::sample::select(SentimentLabel::ALL.to_vec())
}

fn sentence() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(WORDS.to_vec()), 0..10).prop_map(|w| w.join(" "))
}

fn tweets() -> impl Strategy<Value = Vec<Tweet>> {
    prop::collection::vec((sentence(), any::<bool>(), 0i64..20), 0..25).prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (text, rt, t))| {
                let text = if rt { format!("RT {text}") } else { text };
                Tweet::new(format!("t{i:02}"), text).at(1_000_000 + t * 3600)
            })
            .collect()
    })
}

fn model_with_counts(a: Vec<u64>, b: Vec<u64>) -> UnigramModel {
    let to_map = |c: Vec<u64>| -> BTreeMap<String, u64> { c.into_iter().enumerate().map(|(i, n)| (format!("w{i}"), n)).collect() };
    let cfg = UnigramConfig { min_count: 1, ..Default::default() };
    UnigramModel::from_counts(("a", "b"), to_map(a), to_map(b), &cfg).unwrap()
}

fn metrics_matrix() -> impl Strategy<Value = ConfusionMatrix> {
    (0u64..80, 0u64..80, 0u64..80, 0u64..80).prop_map(|(a, b, c, d)| ConfusionMatrix::new(a, b, c, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // --- corpus ---

    #[test]
    fn filter_is_idempotent_and_accounts_for_every_tweet(input in tweets()) {
        let cfg = FilterConfig::default();
        let n = input.len();
        let (kept, report) = filter_pipeline(input.clone(), &cfg).unwrap();
        prop_assert_eq!(report.total(), n);
        prop_assert_eq!(report.kept, kept.len());
        let (again, second) = filter_pipeline(kept.clone(), &cfg).unwrap();
        prop_assert_eq!(&again, &kept);
        prop_assert_eq!(second.kept, kept.len());
        // every removed duplicate resembles an earlier kept tweet
        for t in &input {
            if kept.contains(t) { continue; }
            let set = term_set(&t.text);
            let near_earlier = kept.iter().take_while(|k| k.id < t.id).any(|k| jaccard(&set, &term_set(&k.text)) > 0.9);
            let other_rule = t.text.contains("RT") || t.text.chars().count() < 20
                || moodpipe::corpus::english_fraction(&t.text, &cfg.english_words) < 0.15;
            prop_assert!(near_earlier || other_rule, "{:?} removed without cause", t.text);
        }
    }

    #[test]
    fn search_is_newest_first_in_window(input in tweets(), now in 1_000_000i64..1_100_000, cap in 1usize..30) {
        let corpus = Corpus::new(input);
        let params = SearchParams { max_results: cap, window_days: 1, ..SearchParams::at(now) };
        let found = corpus.search("the", &params).unwrap().tweets;
        prop_assert!(found.len() <= cap);
        for t in &found {
            prop_assert!(t.text.to_lowercase().contains("the"));
            prop_assert!(t.created_at <= now && t.created_at >= now - 86_400);
        }
        for w in found.windows(2) {
            prop_assert!(w[0].created_at > w[1].created_at || (w[0].created_at == w[1].created_at && w[0].id < w[1].id));
        }
    }

    #[test]
    fn jaccard_is_symmetric_and_bounded(a in sentence(), b in sentence()) {
        let (x, y) = (term_set(&a), term_set(&b));
        let j = jaccard(&x, &y);
        prop_assert!((0.0..=1.0).contains(&j));
        prop_assert_eq!(j, jaccard(&y, &x));
        prop_assert_eq!(jaccard(&x, &x), 1.0);
    }

    // --- labeling ---

    #[test]
    fn agreement_laws(pairs in prop::collection::vec((label(), label()), 1..40)) {
        let (a, b): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let strict = agreement(&a, &b, AgreementMode::Strict).unwrap();
        let lenient = agreement(&a, &b, AgreementMode::Lenient).unwrap();
        prop_assert!(strict <= lenient);
        prop_assert_eq!(strict, agreement(&b, &a, AgreementMode::Strict).unwrap());
        prop_assert_eq!(lenient, agreement(&b, &a, AgreementMode::Lenient).unwrap());
        prop_assert_eq!(agreement(&a, &a, AgreementMode::Strict).unwrap(), 1.0);
    }

    #[test]
    fn majority_vote_ignores_order(votes in prop::collection::vec(label(), 1..7).prop_shuffle(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut shuffled = votes.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(majority_vote(&votes).unwrap(), majority_vote(&shuffled).unwrap());
    }

    #[test]
    fn class_counts_cover_input(outcomes in prop::collection::vec(prop::sample::select(vec![
        MergedLabel::Positive, MergedLabel::Negative, MergedLabel::Neutral,
        MergedLabel::Ambiguous, MergedLabel::NoMajority, MergedLabel::NonEnglish,
    ]), 0..60)) {
        prop_assert_eq!(class_counts(&outcomes).total(), outcomes.len());
    }

    // --- lexicons ---

    #[test]
    fn mpqa_score_is_additive_and_flips_sign(a in sentence(), b in sentence(), extra in prop::collection::vec(0usize..400, 0..6)) {
        let text = include_str!("../data/mpqa_sample.tff");
        let clue_words: Vec<&str> = text.lines().filter_map(|l| l.split("word1=").nth(1)?.split(' ').next()).collect();
        let pick: Vec<&str> = extra.iter().map(|&i| clue_words[i % clue_words.len()]).collect();
        let a = format!("{a} {}", pick.join(" "));
        let lex = MpqaLexicon::shipped();
        let (ta, tb) = (tokenize(&a), tokenize(&b));
        let joined: Vec<_> = ta.iter().chain(&tb).cloned().collect();
        let total = mpqa_score(&joined, lex);
        prop_assert!((total - mpqa_score(&ta, lex) - mpqa_score(&tb, lex)).abs() <= 1e-12);

        let swapped_text = text
            .replace("priorpolarity=positive", "priorpolarity=TMP")
            .replace("priorpolarity=negative", "priorpolarity=positive")
            .replace("priorpolarity=TMP", "priorpolarity=negative");
        let (swapped, _) = MpqaLexicon::parse(&swapped_text).unwrap();
        prop_assert!((mpqa_score(&joined, &swapped) + total).abs() <= 1e-12);
    }

    #[test]
    fn emoticon_counts_match_emoticon_tokens(parts in prop::collection::vec(prop_oneof![
        prop::sample::select(vec![":)", ":(", ":D", "<3", ":'(", ";)", "D:"]).prop_map(String::from),
        sentence(),
    ], 0..8)) {
        let text = parts.join(" ");
        let lex = EmoticonLexicon::shipped();
        let tokens = tokenize(&text);
        let surfaces: Vec<&str> = tokens.iter().map(|t| t.surface.as_str()).collect();
        let (p, n) = lex.counts(&surfaces);
        let matched = tokens.iter().filter(|t| t.kind == TokenKind::Emoticon && lex.all().any(|e| e == t.surface)).count();
        prop_assert_eq!((p + n) as usize, matched);
    }

    // --- unigram model and information gain ---

    #[test]
    fn word_probabilities_normalize(counts in prop::collection::vec((0u64..40, 1u64..40), 1..60)) {
        let (a, b): (Vec<_>, Vec<_>) = counts.into_iter().unzip();
        let m = model_with_counts(a, b);
        for class in [UnigramClass::A, UnigramClass::B] {
            let s: f64 = m.vocab.iter().map(|w| m.word_prob(w, class).unwrap()).sum();
            prop_assert!((s - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn posterior_is_bag_of_words_with_complement(
        counts in prop::collection::vec((0u64..30, 1u64..30), 2..12),
        tweet in prop::collection::vec(0usize..12, 0..8).prop_shuffle(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let v = counts.len();
        let (a, b): (Vec<_>, Vec<_>) = counts.into_iter().unzip();
        let m = model_with_counts(a, b);
        let terms: Vec<String> = tweet.iter().map(|i| format!("w{}", i % v)).collect();
        let mut shuffled = terms.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let p = m.posterior(&terms);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!((p - m.posterior(&shuffled)).abs() <= 1e-12);
        prop_assert!((p + m.swapped().posterior(&terms) - 1.0).abs() <= 1e-12);
        prop_assert_eq!(m.posterior_b(&terms), 1.0 - p);
    }

    #[test]
    fn posterior_matches_exact_product(
        counts in prop::collection::vec((0u64..50, 1u64..50), 1..=10),
        tweet in prop::collection::vec(0usize..10, 0..=5),
    ) {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        use num_traits::{One, ToPrimitive};
        let v = counts.len();
        let (a, b): (Vec<_>, Vec<_>) = counts.into_iter().unzip();
        let m = model_with_counts(a, b);
        let terms: Vec<String> = tweet.iter().map(|i| format!("w{}", i % v)).collect();
        let prob = |w: &str, c: UnigramClass| {
            BigRational::new(BigInt::from(m.count(w, c) + 1), BigInt::from(m.total(c) + v as u64))
        };
        let (mut pa, mut pb) = (BigRational::one(), BigRational::one());
        for w in &terms {
            pa *= prob(w, UnigramClass::A);
            pb *= prob(w, UnigramClass::B);
        }
        let exact = &pa / (&pa + &pb);
        let want = exact.numer().to_f64().unwrap() / exact.denom().to_f64().unwrap();
        prop_assert!((m.posterior(&terms) - want).abs() <= 1e-12);
    }

    #[test]
    fn evenly_split_word_leaves_posterior_unchanged(
        counts in prop::collection::vec(1u64..30, 2..10),
        tweet in prop::collection::vec(0usize..10, 0..6),
        even in 1u64..20,
        rot in 1usize..10,
    ) {
        // class b holds a rotation of class a's counts, so both totals match
        let v = counts.len();
        let mut b = counts.clone();
        b.rotate_left(rot % v);
        let mut a = counts;
        a.push(even);
        b.push(even);
        let m = model_with_counts(a, b);
        let terms: Vec<String> = tweet.iter().map(|i| format!("w{}", i % v)).collect();
        let mut with = terms.clone();
        with.push(format!("w{v}"));
        prop_assert!((m.posterior(&terms) - m.posterior(&with)).abs() <= 1e-12);
    }

    #[test]
    fn gain_is_bounded_and_zero_when_independent(
        rows in prop::collection::vec((0u8..4, 0u8..3), 1..40),
        values in 1usize..4, classes in 1usize..4, reps in 1usize..4,
    ) {
        let (x, y): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        let xs: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        let h = moodpipe::features::entropy(&y);
        for b in [Binning::Distinct, Binning::BestBinarySplit] {
            let g = information_gain(&xs, &y, b).unwrap();
            prop_assert!(g >= 0.0 && g <= h + 1e-12);
        }
        // every (value, class) cell equally filled: value says nothing about class
        let mut vx = Vec::new();
        let mut vy = Vec::new();
        for v in 0..values { for c in 0..classes { for _ in 0..reps { vx.push(v as f64); vy.push(c); } } }
        prop_assert!(information_gain(&vx, &vy, Binning::Distinct).unwrap().abs() <= 1e-12);
    }

    // --- metrics and folds ---

    #[test]
    fn metric_ranges(m in metrics_matrix()) {
        let r = compute_metrics(&m);
        for v in [r.precision, r.recall, r.accuracy, r.f1, r.true_rate, r.false_positive_rate] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        prop_assert_eq!(r.true_rate, r.recall);
        if r.precision + r.recall > 0.0 {
            prop_assert!(r.f1 >= r.precision.min(r.recall) - 1e-15 && r.f1 <= r.precision.max(r.recall) + 1e-15);
        } else {
            prop_assert_eq!(r.f1, 0.0);
        }
    }

    #[test]
    fn relabeling_permutes_metric_rows(
        pairs in prop::collection::vec((0usize..3, 0usize..3), 1..60),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let (truth, pred): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let relabel = |v: &[usize]| -> Vec<usize> { v.iter().map(|&c| perm[c]).collect() };
        let (t2, p2) = (relabel(&truth), relabel(&pred));
        for c in 0..3 {
            let before = compute_metrics(&ConfusionMatrix::one_vs_rest(&truth, &pred, &c));
            let after = compute_metrics(&ConfusionMatrix::one_vs_rest(&t2, &p2, &perm[c]));
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn folds_partition_and_stratify(labels in prop::collection::vec(0u8..4, 2..200), k in 2usize..12, seed in any::<u64>()) {
        prop_assume!(k <= labels.len());
        let folds = stratified_folds(&labels, k, seed).unwrap();
        let mut all: Vec<usize> = folds.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..labels.len()).collect::<Vec<_>>());
        for c in 0..4u8 {
            let sizes: Vec<usize> = folds.iter().map(|f| f.iter().filter(|&&i| labels[i] == c).count()).collect();
            prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        }
        prop_assert_eq!(stratified_folds(&labels, k, seed).unwrap(), folds);
    }

    // --- scoring ---

    #[test]
    fn score_properties(p in 0u64..2000, n in 0u64..2000, v in 0.0f64..1e4, dv in 0.0f64..1e4) {
        let cfg = ScoreConfig::default();
        let s = popularity_score(p, n, v, &cfg);
        prop_assert!((-100.0..=100.0).contains(&s));
        prop_assert_eq!(popularity_score(n, p, v, &cfg), -s);
        let s2 = popularity_score(p, n, v + dv, &cfg);
        prop_assert!(s2.abs() >= s.abs() && s * s2 >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stage_one_outputs_stay_in_unit_square(text in "\\PC{0,120}") {
        let (analyzer, pipeline) = &*TRAINED;
        let c = pipeline.classify_text(analyzer, &text);
        prop_assert!((0.0..=1.0).contains(&c.p_obj) && (0.0..=1.0).contains(&c.p_pos));
        prop_assert_eq!(c, pipeline.classify_text(analyzer, &text));
    }

    #[test]
    fn stage_two_decides_every_point(
        points in prop::collection::vec(((0.0f64..=1.0, 0.0f64..=1.0), 0usize..3), 12..40),
        probe in prop::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), 1..20),
    ) {
        let (xy, ys): (Vec<_>, Vec<_>) = points.into_iter().unzip();
        prop_assume!((0..3).all(|c| ys.contains(&c)));
        let pts: Vec<StageOnePoint> = xy.iter().map(|&(a, b)| StageOnePoint::new(a, b)).collect();
        let labels: Vec<Sentiment3> = ys.iter().map(|&c| Sentiment3::ALL[c]).collect();
        let params = Stage2Params { svm_iterations: 2000, logreg_max_iterations: 500, ..Default::default() };
        for kind in Stage2Kind::ALL {
            let model = match train_stage2(kind, &pts, &labels, &params) {
                Ok(m) => m,
                // degenerate inputs (e.g. a collapsed k-means cluster) are reported, never panicked on
                Err(moodpipe::Error::Degenerate(_)) => continue,
                Err(e) => return Err(TestCaseError::fail(format!("{kind}: {e}"))),
            };
            let restored: StageTwoModel = serde_json::from_str(&serde_json::to_string(&model).unwrap()).unwrap();
            for &(a, b) in &probe {
                let p = StageOnePoint::new(a, b);
                let c = model.predict(p);
                prop_assert!(Sentiment3::ALL.contains(&c));
                prop_assert_eq!(c, restored.predict(p));
            }
        }
    }

    #[test]
    fn svm_separates_separable_points(
        obj in prop::collection::vec((0.85f64..=1.0, 0.4f64..0.6), 5..15),
        pos in prop::collection::vec((0.0f64..0.15, 0.85f64..=1.0), 5..15),
        neg in prop::collection::vec((0.0f64..0.15, 0.0f64..0.15), 5..15),
    ) {
        let mut pts = Vec::new();
        let mut labels = Vec::new();
        for (group, class) in [(&obj, Sentiment3::Objective), (&pos, Sentiment3::Positive), (&neg, Sentiment3::Negative)] {
            for &(a, b) in group {
                pts.push(StageOnePoint::new(a, b));
                labels.push(class);
            }
        }
        let model = train_stage2(Stage2Kind::Svm, &pts, &labels, &Stage2Params::default()).unwrap();
        for (p, l) in pts.iter().zip(&labels) {
            prop_assert_eq!(model.predict(*p), *l, "at {:?}", p);
        }
    }

    #[test]
    fn stats_upsert_is_idempotent(rows in prop::collection::vec((prop::sample::select(vec!["a", "b", "c"]), 0i64..5, -100.0f64..100.0), 0..12)) {
        let dir = tempfile::tempdir().unwrap();
        let store = StatsStore::new(dir.path().join("s.jsonl"));
        let records: Vec<HourlyStat> = rows.iter().map(|&(k, h, s)| HourlyStat {
            keyword: k.into(), hour_start: h * 3600, score: s, n_pos: 1, n_neg: 0, n_neu: 0,
        }).collect();
        store.upsert(&records).unwrap();
        let once = store.load().unwrap();
        store.upsert(&records).unwrap();
        prop_assert_eq!(&store.load().unwrap(), &once);
        let mut keys: Vec<_> = once.iter().map(|r| (r.keyword.clone(), r.hour_start)).collect();
        let n = keys.len();
        keys.sort();
        keys.dedup();
        prop_assert_eq!(keys.len(), n);
    }
}
