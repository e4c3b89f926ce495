use super::formula::Formula;

/// Canonical, fully parenthesized text: unary operators as `OP (x)`, binary
/// operators as `(x) OP (y)`, predicates bare.
pub fn render_ltl(f: &Formula) -> String {
    let mut out = String::new();
    write_full(f, &mut out);
    out
}

fn write_full(f: &Formula, out: &mut String) {
    use Formula::*;
    let unary = |op: &str, a: &Formula, out: &mut String| {
        out.push_str(op);
        out.push_str(" (");
        write_full(a, out);
        out.push(')');
    };
    let binary = |op: &str, a: &Formula, b: &Formula, out: &mut String| {
        out.push('(');
        write_full(a, out);
        out.push_str(") ");
        out.push_str(op);
        out.push_str(" (");
        write_full(b, out);
        out.push(')');
    };
    match f {
        True => out.push_str("true"),
        False => out.push_str("false"),
        Atom(p) => out.push_str(&p.to_string()),
        Not(a) => unary("!", a, out),
        Next(a) => unary("X", a, out),
        Eventually(a) => unary("F", a, out),
        Globally(a) => unary("G", a, out),
        And(a, b) => binary("&", a, b, out),
        Or(a, b) => binary("|", a, b, out),
        Implies(a, b) => binary("->", a, b, out),
        Until(a, b) => binary("U", a, b, out),
        WeakUntil(a, b) => binary("W", a, b, out),
    }
}

// Binding strength; higher binds tighter.
fn level(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        Implies(..) => 1,
        Or(..) => 2,
        And(..) => 3,
        Until(..) | WeakUntil(..) => 4,
        Not(_) | Next(_) | Eventually(_) | Globally(_) => 5,
        True | False | Atom(_) => 6,
    }
}

/// Infix text with only the parentheses the grammar needs; used for the
/// requirement syntax, e.g. `Ethernet & ISSConnection & !LargeFiles`.
pub fn render_compact(f: &Formula) -> String {
    use Formula::*;
    let wrap = |child: &Formula, min: u8| {
        let text = render_compact(child);
        if level(child) < min {
            format!("({text})")
        } else {
            text
        }
    };
    // Comparisons read ambiguously right after a unary operator.
    let unary_operand = |child: &Formula| match child {
        Atom(p) if !p.is_boolean() => format!("({})", render_compact(child)),
        _ => wrap(child, 5),
    };
    match f {
        True | False | Atom(_) => render_ltl(f),
        Not(a) => format!("!{}", unary_operand(a)),
        Next(a) => format!("X {}", unary_operand(a)),
        Eventually(a) => format!("F {}", unary_operand(a)),
        Globally(a) => format!("G {}", unary_operand(a)),
        // left-associative chains
        And(a, b) => format!("{} & {}", wrap(a, 3), wrap(b, 4)),
        Or(a, b) => format!("{} | {}", wrap(a, 2), wrap(b, 3)),
        // right-associative
        Implies(a, b) => format!("{} -> {}", wrap(a, 2), wrap(b, 1)),
        Until(a, b) => format!("{} U {}", wrap(a, 5), wrap(b, 4)),
        WeakUntil(a, b) => format!("{} W {}", wrap(a, 5), wrap(b, 4)),
    }
}
