use hyperrigid::corpus::{interval_i1, star_arm, star_omega, worked_corpus};
use hyperrigid::fock::{verify_certificate, witness_for, FockConfig, WitnessCertificate};
use hyperrigid::fuzz::{random_discrete, random_interval, FuzzConfig};
use hyperrigid::topograph::decide_hyperrigid;
use hyperrigid::{Error, GraphPresentation, InstanceFile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = 10_000;

#[test]
fn corpus_witnesses_verify_and_positives_refuse() {
    for (name, g, hyperrigid) in worked_corpus() {
        assert_eq!(decide_hyperrigid(&g).unwrap().hyperrigid, hyperrigid, "{name}");
        match witness_for(&g, FockConfig::default()) {
            Ok(cert) => {
                assert!(!hyperrigid, "{name}");
                assert_eq!(verify_certificate(&cert, &g, BUDGET).failing, None, "{name}");
            }
            Err(Error::Refused(_)) => assert!(hyperrigid, "{name}"),
            Err(e) => panic!("{name}: {e}"),
        }
    }
}

#[test]
fn interval_certificate_uses_the_local_model() {
    let cert = witness_for(&interval_i1(), FockConfig::default()).unwrap();
    assert_eq!(cert.instance_kind, "interval");
    assert_eq!(cert.sigma, ["v:1#1"]);
    assert_eq!(cert.levels[1], ["e:1/2(1,1,1)⊗v:1#1"]);
    assert_eq!(cert.non_reducing.generator, "e:1/2(1,1,1)");
}

#[test]
fn other_truncation_levels() {
    for level in [1, 2, 4] {
        let cfg = FockConfig { level, budget: BUDGET };
        for g in [star_arm(), interval_i1()] {
            let cert = witness_for(&g, cfg).unwrap();
            assert_eq!(cert.fock_level, level);
            assert!(verify_certificate(&cert, &g, BUDGET).ok);
        }
    }
}

#[test]
fn certificates_survive_json() {
    let cert = witness_for(&star_arm(), FockConfig::default()).unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    let back: WitnessCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

#[test]
fn certificate_against_the_wrong_instance() {
    let cert = witness_for(&star_arm(), FockConfig::default()).unwrap();
    let out = verify_certificate(&cert, &star_omega(), BUDGET);
    assert_eq!(out.failing.as_deref(), Some("ideal"));
    let refused = verify_certificate(&cert, &hyperrigid::corpus::loop_l(), BUDGET);
    assert_eq!(refused.failing.as_deref(), Some("instance"));
    assert_eq!(verify_certificate(&cert, &interval_i1(), BUDGET).failing.as_deref(), Some("instance_kind"));
}

#[test]
fn fuzzed_witnesses_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = FuzzConfig::default();
    let (mut witnessed, mut symbolic) = (0, 0);
    for k in 0..120 {
        let g = if k % 2 == 0 {
            GraphPresentation::Discrete(random_discrete(&mut rng, &cfg))
        } else {
            GraphPresentation::Interval(random_interval(&mut rng, &cfg))
        };
        if decide_hyperrigid(&g).unwrap().hyperrigid {
            continue;
        }
        match witness_for(&g, FockConfig::default()) {
            Ok(cert) => {
                witnessed += 1;
                assert_eq!(verify_certificate(&cert, &g, BUDGET).failing, None, "instance {k}");
            }
            Err(Error::SymbolicOnly(_) | Error::Budget { .. }) => symbolic += 1,
            Err(e) => panic!("instance {k}: {e}"),
        }
    }
    assert!(witnessed >= 40, "{witnessed} witnessed, {symbolic} symbolic only");
}

#[test]
fn instance_files_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = FuzzConfig::default();
    let mut graphs: Vec<GraphPresentation> = worked_corpus().into_iter().map(|(_, g, _)| g).collect();
    for _ in 0..30 {
        graphs.push(GraphPresentation::Discrete(random_discrete(&mut rng, &cfg)));
        graphs.push(GraphPresentation::Interval(random_interval(&mut rng, &cfg)));
    }
    for g in graphs {
        let file = InstanceFile::from_presentation(&g);
        let parsed = InstanceFile::from_json(&file.to_json()).unwrap();
        assert_eq!(parsed, file);
        assert_eq!(parsed.to_presentation().unwrap(), g);
    }
}
