//! Specification patterns: the catalogue, instantiation to FRETish, direct
//! LTL construction and structural classification.

mod catalogue;
mod classify;
mod instantiate;

pub use catalogue::{
    canonical_name, export_catalogue, label_agrees, list_catalogue, template, variant_name, Axis, Category,
    PatternTemplate, Provenance, Role, DELAYED_REACTION, INSTANT_REACTION, KEEP_OUT_ZONE, MAINTAIN_SAFE_SPACE,
    PHASES, PROMPT_REACTION, RECONNECT, STAY_IN_PERIMETER, TRANSMIT, VISIT_WITH_REACTION, WAIT,
};
pub use classify::{classify, Classification};
pub use instantiate::{check_instance, future_avoidance_ltl, instantiate, pattern_ltl, PatternError, PatternInstance};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fretish::{parse_fretish, render_fretish};
    use crate::ltl::{parse_ltl, Formula};
    use crate::semantics::to_ltl;

    fn name_of(text: &str) -> Option<String> {
        classify(&parse_fretish(text).unwrap()).map(|c| c.name)
    }

    #[test]
    fn catalogue_is_sorted_and_unique() {
        let list = list_catalogue();
        for pair in list.windows(2) {
            assert!((pair[0].category, pair[0].name) < (pair[1].category, pair[1].name));
        }
        let phases = template("Phases").unwrap();
        assert_eq!(phases.category, Category::ModeSequencing);
        assert_eq!(phases.provenance, Provenance::New);
        assert!(matches!(template("Wait").unwrap().provenance, Provenance::Prior2019 | Provenance::Prior2024));
        assert!(template("Semi-Autonomous").unwrap().is_label_only());
        for t in list.iter().filter(|t| t.provenance == Provenance::New) {
            assert!(matches!(t.category, Category::ModeSequencing | Category::Communication | Category::Localisation));
        }
    }

    #[test]
    fn names_and_labels() {
        assert_eq!(variant_name("Instant Reaction", &[Axis::Triggered, Axis::Modal]), "Modal Triggered Instant Reaction");
        assert_eq!(canonical_name("triggered  instant reaction").as_deref(), Some("Triggered Instant Reaction"));
        assert_eq!(canonical_name("Modal Transmit").as_deref(), Some("Modal Transmit"));
        assert_eq!(canonical_name("Triggered Transmit"), None);
        assert_eq!(canonical_name("Modal Semi-Autonomous"), None);
        assert_eq!(canonical_name("Conditional Wait").as_deref(), Some("Conditional Wait"));
        assert!(label_agrees("Modal Reaction", "Modal Delayed Reaction"));
        assert!(!label_agrees("Modal Reaction", "Delayed Reaction"));
        assert!(label_agrees("Prompt  Reaction", "Prompt Reaction"));
    }

    #[test]
    fn instantiate_examples() {
        let transmit = PatternInstance::new(TRANSMIT, "Astrobee")
            .bind_atoms("connections", &["Ethernet", "ISSConnection"])
            .bind_atoms("data", &["LargeFiles"])
            .bind_atoms("protocol", &["transmit"]);
        assert_eq!(
            render_fretish(&instantiate(&transmit).unwrap()).unwrap(),
            "whenever Ethernet & ISSConnection & !LargeFiles Astrobee shall until LargeFiles transmit"
        );
        let koz = PatternInstance::new(KEEP_OUT_ZONE, "Astrobee")
            .bind_atoms("action", &["moving"])
            .bind_atoms("areas", &["KOZ1", "KOZ2"]);
        assert_eq!(
            render_fretish(&instantiate(&koz).unwrap()).unwrap(),
            "whenever moving Astrobee shall immediately !KOZ1 & !KOZ2"
        );
        let phases = PatternInstance::new(PHASES, "System")
            .bind_atoms("phases", &["LaunchPhase", "SeperationPhase"])
            .bind_atoms("conditions", &["burnout", "transferorbit"]);
        let g = instantiate(&phases).unwrap();
        assert_eq!(
            g,
            parse_fretish(
                "upon LaunchPhase System shall eventually burnout \
                 + upon burnout System shall at the next timepoint SeperationPhase \
                 + upon SeperationPhase System shall eventually transferorbit"
            )
            .unwrap()
        );
    }

    #[test]
    fn instantiate_errors() {
        let missing = PatternInstance::new(TRANSMIT, "S").bind_atoms("connections", &["c"]);
        assert!(matches!(instantiate(&missing), Err(PatternError::MissingBinding { .. })));
        let arity = PatternInstance::new(PHASES, "S").bind_atoms("phases", &["p"]).bind_atoms("conditions", &["c"]);
        assert!(matches!(instantiate(&arity), Err(PatternError::Arity { .. })));
        let label = PatternInstance::new("Semi-Autonomous", "S");
        assert!(matches!(instantiate(&label), Err(PatternError::LabelOnly(_))));
        let axis = PatternInstance::new(TRANSMIT, "S")
            .bind_atoms("connections", &["c"])
            .bind_atoms("data", &["d"])
            .bind_atoms("protocol", &["T"])
            .triggered();
        assert!(matches!(instantiate(&axis), Err(PatternError::UnsupportedAxis { .. })));
        let not_atom = PatternInstance::new(RECONNECT, "S")
            .bind("connections", vec![parse_ltl("x < 2").unwrap()])
            .bind_atoms("protocol", &["R"]);
        assert!(matches!(instantiate(&not_atom), Err(PatternError::NotAtom { .. })));
    }

    #[test]
    fn pattern_ltl_examples() {
        let sip = PatternInstance::new(STAY_IN_PERIMETER, "S").bind_atoms("action", &["a"]).bind_atoms("areas", &["l1", "l2"]);
        assert_eq!(pattern_ltl(&sip).unwrap(), parse_ltl("G (a -> (l1 & l2))").unwrap());
        let rec = PatternInstance::new(RECONNECT, "S").bind_atoms("connections", &["k1", "k2"]).bind_atoms("protocol", &["R"]);
        assert_eq!(pattern_ltl(&rec).unwrap(), parse_ltl("G ((!k1 | !k2) -> (R W (k1 & k2)))").unwrap());
        let tr = PatternInstance::new(TRANSMIT, "S")
            .bind_atoms("connections", &["c1"])
            .bind_atoms("data", &["d1"])
            .bind_atoms("protocol", &["T"]);
        assert_eq!(pattern_ltl(&tr).unwrap(), parse_ltl("G ((c1 & !d1) -> (T W d1))").unwrap());
        for inst in [sip, rec, tr] {
            assert_eq!(pattern_ltl(&inst).unwrap().normalized(), to_ltl(&instantiate(&inst).unwrap()).unwrap().normalized());
        }
        assert_eq!(
            future_avoidance_ltl(Formula::atom("a"), Formula::atom("l")),
            parse_ltl("G (a -> G !l)").unwrap()
        );
    }

    #[test]
    fn classify_examples() {
        let cases = [
            ("if parachutedistance <= safeparachutedistance EDL shall immediately DeployParachute", "Triggered Instant Reaction"),
            ("In SAFEMODE whenever CONTINGENCY IM shall immediately isolated", "Modal Instant Reaction"),
            ("whenever moving SPHERES shall immediately x < 2 & y < 2 & z < 2", "Stay-In-Perimeter"),
            ("whenever IntBall2Power <= SafeBattery IntBall2 shall at the next timepoint RechargeMode", "Prompt Reaction"),
            (
                "In NOMINALTESTINGMODE whenever SMConnection & ISSConnection & GroundSegment & !files IM shall until files transmit",
                "Modal Transmit",
            ),
            ("whenever !GroundSignal | !ISSConnection Astrobee shall until (ISSConnection & GroundSignal) Reconnect", "Reconnect"),
            ("whenever moving Astrobee shall immediately !KOZ1 & !KOZ2", "Keep-Out-Zone"),
            ("In AudioRecording Astrobee shall always BlueAudLED", "Modal Maintain Safe Space"),
            ("Aircraft shall with probability <= 0.001 eventually absReal_cte > 8", "Probabilistic Maintain Safe Space"),
            ("In M upon c S shall immediately r", "Modal Triggered Instant Reaction"),
            ("upon p1 S shall eventually c1 + upon c1 S shall at the next timepoint p2", "Phases"),
            (
                "whenever v IntBall2 shall until f RotateProtocol + whenever v IntBall2 shall eventually f",
                "Wait",
            ),
        ];
        for (text, expected) in cases {
            assert_eq!(name_of(text).as_deref(), Some(expected), "{text}");
        }
        assert_eq!(name_of("S shall immediately r"), None);
        assert_eq!(name_of("upon p1 S shall eventually c1 + upon x S shall at the next timepoint p2"), None);
    }

    #[test]
    fn probabilistic_dual_bindings() {
        let c = classify(&parse_fretish("Aircraft shall with probability <= 0.001 eventually bad").unwrap()).unwrap();
        assert_eq!(c.bindings()["response"], vec![parse_ltl("!bad").unwrap()]);
        let p = c.instance.probability.unwrap();
        assert_eq!(p.op, crate::fretish::ProbOp::Ge);
        assert_eq!(crate::numeric::render_decimal(&p.value), "0.999");
    }
}
