//! A small imperative IR and the task templates built from it.

use super::style::{Namer, Style};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ty {
    Int,
    /// Integer used as an array index.
    Index,
    Bool,
    List,
    Void,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Lt,
    Le,
    Gt,
    Eq,
    Ne,
    And,
}

impl Op {
    pub fn precedence(self) -> u8 {
        match self {
            Op::And => 2,
            Op::Lt | Op::Le | Op::Gt | Op::Eq | Op::Ne => 3,
            Op::Add | Op::Sub => 4,
            Op::Mul | Op::Div | Op::Mod => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    Int(i64),
    Bool(bool),
    Bin(Op, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    Index(Box<Expr>, Box<Expr>),
    Len(Box<Expr>),
    ReadInt,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Let(String, Ty, Expr),
    /// Zero-filled list of the given length.
    NewList(String, Expr),
    /// Reads `len` integers into a new list.
    ReadList(String, Expr),
    Assign(String, Expr),
    SetIndex(String, Expr, Expr),
    AddAssign(String, Expr),
    If(Expr, Vec<Stmt>, Vec<Stmt>),
    /// `for var in [from, to)`.
    For(String, Expr, Expr, Vec<Stmt>),
    While(Expr, Vec<Stmt>),
    Return(Option<Expr>),
    Print(Expr),
    Break,
    Comment(String),
    /// Section break; rendered as an empty line when the style wants one.
    Blank,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Func {
    pub name: String,
    pub params: Vec<(String, Ty)>,
    pub ret: Ty,
    pub doc: String,
    pub body: Vec<Stmt>,
}

/// Helper functions plus the statements that drive them.
#[derive(Debug, Clone, PartialEq)]
pub struct Unit {
    pub funcs: Vec<Func>,
    pub main: Vec<Stmt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Template {
    SumFiltered,
    CountPrimes,
    MaxSubarray,
    Fibonacci,
    GcdFold,
    DigitSum,
    LowerBound,
    PairCount,
    Collatz,
}

impl Template {
    pub const ALL: [Template; 9] = [
        Template::SumFiltered,
        Template::CountPrimes,
        Template::MaxSubarray,
        Template::Fibonacci,
        Template::GcdFold,
        Template::DigitSum,
        Template::LowerBound,
        Template::PairCount,
        Template::Collatz,
    ];
}

/// Random constants of one template instance.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub modulus: i64,
    pub remainder: i64,
    pub big_mod: i64,
    pub extra_condition: bool,
}

pub fn var(name: &str) -> Expr {
    Expr::Var(name.to_string())
}

fn int(v: i64) -> Expr {
    Expr::Int(v)
}

fn bin(op: Op, a: Expr, b: Expr) -> Expr {
    Expr::Bin(op, Box::new(a), Box::new(b))
}

fn index(list: &str, i: Expr) -> Expr {
    Expr::Index(Box::new(var(list)), Box::new(i))
}

fn len(list: &str) -> Expr {
    Expr::Len(Box::new(var(list)))
}

fn call(f: &str, args: Vec<Expr>) -> Expr {
    Expr::Call(f.to_string(), args)
}

struct Builder<'a> {
    style: &'a Style,
    names: &'a mut Namer,
}

impl Builder<'_> {
    fn n(&mut self, key: &str) -> String {
        self.names.var(key)
    }

    fn f(&mut self, key: &str) -> String {
        self.names.func(key)
    }

    fn comment(&self, text: &str) -> Option<Stmt> {
        self.style.comments.then(|| Stmt::Comment(text.to_string()))
    }

    fn guard_empty(&self, list: &str, value: Expr) -> Option<Stmt> {
        self.style.validation.then(|| {
            Stmt::If(
                bin(Op::Eq, len(list), int(0)),
                vec![Stmt::Return(Some(value))],
                vec![],
            )
        })
    }
}

fn push(body: &mut Vec<Stmt>, s: Option<Stmt>) {
    body.extend(s);
}

fn read_n(b: &mut Builder<'_>, main: &mut Vec<Stmt>) -> String {
    let n = b.n("n");
    push(main, b.comment("Read the input"));
    main.push(Stmt::Let(n.clone(), Ty::Int, Expr::ReadInt));
    n
}

fn read_list(b: &mut Builder<'_>, main: &mut Vec<Stmt>) -> (String, String) {
    let n = read_n(b, main);
    let arr = b.n("arr");
    main.push(Stmt::ReadList(arr.clone(), var(&n)));
    main.push(Stmt::Blank);
    (n, arr)
}

fn print_result(b: &mut Builder<'_>, main: &mut Vec<Stmt>, value: Expr) {
    if b.style.helpers && b.style.comments {
        let r = b.n("result");
        main.push(Stmt::Let(r.clone(), Ty::Int, value));
        push(main, b.comment("Output the answer"));
        main.push(Stmt::Print(var(&r)));
    } else {
        main.push(Stmt::Print(value));
    }
}

pub fn build(t: Template, p: &Params, style: &Style, names: &mut Namer) -> Unit {
    let mut b = Builder { style, names };
    match t {
        Template::SumFiltered => sum_filtered(&mut b, p),
        Template::CountPrimes => count_primes(&mut b),
        Template::MaxSubarray => max_subarray(&mut b),
        Template::Fibonacci => fibonacci(&mut b, p),
        Template::GcdFold => gcd_fold(&mut b),
        Template::DigitSum => digit_sum(&mut b),
        Template::LowerBound => lower_bound(&mut b),
        Template::PairCount => pair_count(&mut b),
        Template::Collatz => collatz(&mut b),
    }
}

fn sum_filtered(b: &mut Builder<'_>, p: &Params) -> Unit {
    let mut main = Vec::new();
    let (n, arr) = read_list(b, &mut main);
    let cond = |list: &str, i: Expr| {
        let base = bin(
            Op::Eq,
            bin(Op::Mod, index(list, i.clone()), int(p.modulus)),
            int(p.remainder),
        );
        if p.extra_condition {
            bin(Op::And, base, bin(Op::Gt, index(list, i), int(0)))
        } else {
            base
        }
    };
    if b.style.helpers {
        let f = b.f("sum_matching");
        let values = b.n("arr");
        let total = b.n("total");
        let i = b.n("i");
        let mut body = Vec::new();
        push(&mut body, b.guard_empty(&values, int(0)));
        push(&mut body, b.comment("Accumulate the values that match the condition"));
        body.push(Stmt::Let(total.clone(), Ty::Int, int(0)));
        body.push(Stmt::For(
            i.clone(),
            int(0),
            len(&values),
            vec![Stmt::If(
                cond(&values, var(&i)),
                vec![Stmt::AddAssign(total.clone(), index(&values, var(&i)))],
                vec![],
            )],
        ));
        body.push(Stmt::Blank);
        body.push(Stmt::Return(Some(var(&total))));
        let func = Func {
            name: f.clone(),
            params: vec![(values, Ty::List)],
            ret: Ty::Int,
            doc: "Return the sum of the elements that satisfy the filter.".into(),
            body,
        };
        print_result(b, &mut main, call(&f, vec![var(&arr)]));
        Unit { funcs: vec![func], main }
    } else {
        let total = b.n("total");
        let i = b.n("i");
        main.push(Stmt::Let(total.clone(), Ty::Int, int(0)));
        main.push(Stmt::For(
            i.clone(),
            int(0),
            var(&n),
            vec![Stmt::If(
                cond(&arr, var(&i)),
                vec![Stmt::AddAssign(total.clone(), index(&arr, var(&i)))],
                vec![],
            )],
        ));
        main.push(Stmt::Print(var(&total)));
        Unit { funcs: vec![], main }
    }
}

fn prime_loop(b: &mut Builder<'_>, x: &str, on_divisor: Vec<Stmt>) -> Vec<Stmt> {
    let d = b.n("d");
    vec![
        Stmt::Let(d.clone(), Ty::Int, int(2)),
        Stmt::While(
            bin(Op::Le, bin(Op::Mul, var(&d), var(&d)), var(x)),
            vec![
                Stmt::If(
                    bin(Op::Eq, bin(Op::Mod, var(x), var(&d)), int(0)),
                    on_divisor,
                    vec![],
                ),
                Stmt::AddAssign(d, int(1)),
            ],
        ),
    ]
}

fn count_primes(b: &mut Builder<'_>) -> Unit {
    let mut main = Vec::new();
    let n = read_n(b, &mut main);
    if b.style.helpers {
        let is_prime = b.f("is_prime");
        let counter = b.f("count_primes");
        let x = b.n("x");
        let mut body = vec![Stmt::If(
            bin(Op::Lt, var(&x), int(2)),
            vec![Stmt::Return(Some(Expr::Bool(false)))],
            vec![],
        )];
        push(&mut body, b.comment("Trial division up to the square root"));
        body.extend(prime_loop(b, &x, vec![Stmt::Return(Some(Expr::Bool(false)))]));
        body.push(Stmt::Return(Some(Expr::Bool(true))));
        let f1 = Func {
            name: is_prime.clone(),
            params: vec![(x, Ty::Int)],
            ret: Ty::Bool,
            doc: "Check whether a number is prime.".into(),
            body,
        };
        let limit = b.n("n");
        let count = b.n("count");
        let i = b.n("i");
        let f2 = Func {
            name: counter.clone(),
            params: vec![(limit.clone(), Ty::Int)],
            ret: Ty::Int,
            doc: "Count the primes up to the limit.".into(),
            body: vec![
                Stmt::Let(count.clone(), Ty::Int, int(0)),
                Stmt::For(
                    i.clone(),
                    int(2),
                    bin(Op::Add, var(&limit), int(1)),
                    vec![Stmt::If(
                        call(&is_prime, vec![var(&i)]),
                        vec![Stmt::AddAssign(count.clone(), int(1))],
                        vec![],
                    )],
                ),
                Stmt::Blank,
                Stmt::Return(Some(var(&count))),
            ],
        };
        main.push(Stmt::Blank);
        print_result(b, &mut main, call(&counter, vec![var(&n)]));
        Unit { funcs: vec![f1, f2], main }
    } else {
        let count = b.n("count");
        let i = b.n("i");
        let flag = b.n("flag");
        main.push(Stmt::Let(count.clone(), Ty::Int, int(0)));
        let mut body = vec![Stmt::Let(flag.clone(), Ty::Bool, Expr::Bool(true))];
        body.extend(prime_loop(
            b,
            &i,
            vec![Stmt::Assign(flag.clone(), Expr::Bool(false)), Stmt::Break],
        ));
        body.push(Stmt::If(var(&flag), vec![Stmt::AddAssign(count.clone(), int(1))], vec![]));
        main.push(Stmt::For(i, int(2), bin(Op::Add, var(&n), int(1)), body));
        main.push(Stmt::Print(var(&count)));
        Unit { funcs: vec![], main }
    }
}

fn kadane_body(b: &mut Builder<'_>, arr: &str, end: Expr) -> (Vec<Stmt>, String) {
    let best = b.n("best");
    let cur = b.n("cur");
    let i = b.n("i");
    let body = vec![
        Stmt::Let(best.clone(), Ty::Int, index(arr, int(0))),
        Stmt::Let(cur.clone(), Ty::Int, int(0)),
        Stmt::For(
            i.clone(),
            int(0),
            end,
            vec![
                Stmt::AddAssign(cur.clone(), index(arr, var(&i))),
                Stmt::If(
                    bin(Op::Gt, var(&cur), var(&best)),
                    vec![Stmt::Assign(best.clone(), var(&cur))],
                    vec![],
                ),
                Stmt::If(
                    bin(Op::Lt, var(&cur), int(0)),
                    vec![Stmt::Assign(cur.clone(), int(0))],
                    vec![],
                ),
            ],
        ),
    ];
    (body, best)
}

fn max_subarray(b: &mut Builder<'_>) -> Unit {
    let mut main = Vec::new();
    let (n, arr) = read_list(b, &mut main);
    if b.style.helpers {
        let f = b.f("max_subarray");
        let values = b.n("arr");
        let mut body = Vec::new();
        push(&mut body, b.guard_empty(&values, int(0)));
        push(&mut body, b.comment("Kadane's algorithm"));
        let (loop_body, best) = kadane_body(b, &values, len(&values));
        body.extend(loop_body);
        body.push(Stmt::Blank);
        body.push(Stmt::Return(Some(var(&best))));
        let func = Func {
            name: f.clone(),
            params: vec![(values, Ty::List)],
            ret: Ty::Int,
            doc: "Return the largest sum of a contiguous subarray.".into(),
            body,
        };
        print_result(b, &mut main, call(&f, vec![var(&arr)]));
        Unit { funcs: vec![func], main }
    } else {
        let (body, best) = kadane_body(b, &arr, var(&n));
        main.extend(body);
        main.push(Stmt::Print(var(&best)));
        Unit { funcs: vec![], main }
    }
}

fn fib_body(b: &mut Builder<'_>, n: &str, p: &Params) -> (Vec<Stmt>, String) {
    let m = b.n("mod");
    let dp = b.n("dp");
    let i = b.n("i");
    let body = vec![
        Stmt::Let(m.clone(), Ty::Int, int(p.big_mod)),
        Stmt::NewList(dp.clone(), bin(Op::Add, var(n), int(2))),
        Stmt::SetIndex(dp.clone(), int(1), int(1)),
        Stmt::For(
            i.clone(),
            int(2),
            bin(Op::Add, var(n), int(1)),
            vec![Stmt::SetIndex(
                dp.clone(),
                var(&i),
                bin(
                    Op::Mod,
                    bin(
                        Op::Add,
                        index(&dp, bin(Op::Sub, var(&i), int(1))),
                        index(&dp, bin(Op::Sub, var(&i), int(2))),
                    ),
                    var(&m),
                ),
            )],
        ),
    ];
    (body, dp)
}

fn fibonacci(b: &mut Builder<'_>, p: &Params) -> Unit {
    let mut main = Vec::new();
    let n = read_n(b, &mut main);
    if b.style.helpers {
        let f = b.f("fibonacci");
        let k = b.n("n");
        let mut body = vec![Stmt::If(
            bin(Op::Lt, var(&k), int(2)),
            vec![Stmt::Return(Some(var(&k)))],
            vec![],
        )];
        push(&mut body, b.comment("Bottom-up dynamic programming"));
        let (dp_body, dp) = fib_body(b, &k, p);
        body.extend(dp_body);
        body.push(Stmt::Blank);
        body.push(Stmt::Return(Some(index(&dp, var(&k)))));
        let func = Func {
            name: f.clone(),
            params: vec![(k, Ty::Int)],
            ret: Ty::Int,
            doc: "Return the n-th Fibonacci number modulo a prime.".into(),
            body,
        };
        main.push(Stmt::Blank);
        print_result(b, &mut main, call(&f, vec![var(&n)]));
        Unit { funcs: vec![func], main }
    } else {
        let (body, dp) = fib_body(b, &n, p);
        main.extend(body);
        main.push(Stmt::Print(index(&dp, var(&n))));
        Unit { funcs: vec![], main }
    }
}

fn euclid(x: &str, y: &str, t: &str) -> Stmt {
    Stmt::While(
        bin(Op::Ne, var(y), int(0)),
        vec![
            Stmt::Let(t.to_string(), Ty::Int, bin(Op::Mod, var(x), var(y))),
            Stmt::Assign(x.to_string(), var(y)),
            Stmt::Assign(y.to_string(), var(t)),
        ],
    )
}

fn gcd_fold(b: &mut Builder<'_>) -> Unit {
    let mut main = Vec::new();
    let (n, arr) = read_list(b, &mut main);
    if b.style.helpers {
        let gcd = b.f("gcd");
        let fold = b.f("array_gcd");
        let (x, y, t) = (b.n("a"), b.n("b"), b.n("tmp"));
        let mut g1 = Vec::new();
        push(&mut g1, b.comment("Euclid's algorithm"));
        g1.push(euclid(&x, &y, &t));
        g1.push(Stmt::Return(Some(var(&x))));
        let f1 = Func {
            name: gcd.clone(),
            params: vec![(x, Ty::Int), (y, Ty::Int)],
            ret: Ty::Int,
            doc: "Greatest common divisor of two numbers.".into(),
            body: g1,
        };
        let values = b.n("arr");
        let g = b.n("g");
        let i = b.n("i");
        let mut g2 = Vec::new();
        push(&mut g2, b.guard_empty(&values, int(0)));
        g2.push(Stmt::Let(g.clone(), Ty::Int, int(0)));
        g2.push(Stmt::For(
            i.clone(),
            int(0),
            len(&values),
            vec![Stmt::Assign(g.clone(), call(&gcd, vec![var(&g), index(&values, var(&i))]))],
        ));
        g2.push(Stmt::Return(Some(var(&g))));
        let f2 = Func {
            name: fold.clone(),
            params: vec![(values, Ty::List)],
            ret: Ty::Int,
            doc: "Greatest common divisor of all elements.".into(),
            body: g2,
        };
        print_result(b, &mut main, call(&fold, vec![var(&arr)]));
        Unit { funcs: vec![f1, f2], main }
    } else {
        let g = b.n("g");
        let i = b.n("i");
        let (x, y, t) = (b.n("x"), b.n("y"), b.n("tmp"));
        main.push(Stmt::Let(g.clone(), Ty::Int, int(0)));
        main.push(Stmt::For(
            i.clone(),
            int(0),
            var(&n),
            vec![
                Stmt::Let(x.clone(), Ty::Int, index(&arr, var(&i))),
                Stmt::Let(y.clone(), Ty::Int, var(&g)),
                euclid(&x, &y, &t),
                Stmt::Assign(g.clone(), var(&x)),
            ],
        ));
        main.push(Stmt::Print(var(&g)));
        Unit { funcs: vec![], main }
    }
}

fn digits_loop(x: &str, total: &str) -> Stmt {
    Stmt::While(
        bin(Op::Gt, var(x), int(0)),
        vec![
            Stmt::AddAssign(total.to_string(), bin(Op::Mod, var(x), int(10))),
            Stmt::Assign(x.to_string(), bin(Op::Div, var(x), int(10))),
        ],
    )
}

fn digit_sum(b: &mut Builder<'_>) -> Unit {
    let mut main = Vec::new();
    let n = read_n(b, &mut main);
    let result = b.n("result");
    let i = b.n("i");
    let x = b.n("x");
    main.push(Stmt::Let(result.clone(), Ty::Int, int(0)));
    if b.style.helpers {
        let f = b.f("digit_sum");
        let v = b.n("x");
        let total = b.n("total");
        let mut body = Vec::new();
        push(&mut body, b.comment("Add up the decimal digits"));
        body.push(Stmt::Let(total.clone(), Ty::Int, int(0)));
        body.push(digits_loop(&v, &total));
        body.push(Stmt::Return(Some(var(&total))));
        let func = Func {
            name: f.clone(),
            params: vec![(v, Ty::Int)],
            ret: Ty::Int,
            doc: "Sum of the decimal digits of a number.".into(),
            body,
        };
        main.push(Stmt::For(
            i,
            int(0),
            var(&n),
            vec![
                Stmt::Let(x.clone(), Ty::Int, Expr::ReadInt),
                Stmt::AddAssign(result.clone(), call(&f, vec![var(&x)])),
            ],
        ));
        main.push(Stmt::Blank);
        main.push(Stmt::Print(var(&result)));
        Unit { funcs: vec![func], main }
    } else {
        main.push(Stmt::For(
            i,
            int(0),
            var(&n),
            vec![Stmt::Let(x.clone(), Ty::Int, Expr::ReadInt), digits_loop(&x, &result)],
        ));
        main.push(Stmt::Print(var(&result)));
        Unit { funcs: vec![], main }
    }
}

fn bisect(arr: &str, hi_init: Expr, target: &str, lo: &str, hi: &str, mid: &str) -> Vec<Stmt> {
    vec![
        Stmt::Let(lo.to_string(), Ty::Index, int(0)),
        Stmt::Let(hi.to_string(), Ty::Index, hi_init),
        Stmt::While(
            bin(Op::Lt, var(lo), var(hi)),
            vec![
                Stmt::Let(mid.to_string(), Ty::Index, bin(Op::Div, bin(Op::Add, var(lo), var(hi)), int(2))),
                Stmt::If(
                    bin(Op::Lt, index(arr, var(mid)), var(target)),
                    vec![Stmt::Assign(lo.to_string(), bin(Op::Add, var(mid), int(1)))],
                    vec![Stmt::Assign(hi.to_string(), var(mid))],
                ),
            ],
        ),
    ]
}

fn lower_bound(b: &mut Builder<'_>) -> Unit {
    let mut main = Vec::new();
    let (n, arr) = read_list(b, &mut main);
    let q = b.n("q");
    main.push(Stmt::Let(q.clone(), Ty::Int, Expr::ReadInt));
    let i = b.n("i");
    let t = b.n("target");
    if b.style.helpers {
        let f = b.f("lower_bound");
        let values = b.n("arr");
        let target = b.n("target");
        let (lo, hi, mid) = (b.n("lo"), b.n("hi"), b.n("mid"));
        let mut body = Vec::new();
        push(&mut body, b.comment("Binary search for the first element not less than target"));
        body.extend(bisect(&values, len(&values), &target, &lo, &hi, &mid));
        body.push(Stmt::Return(Some(var(&lo))));
        let func = Func {
            name: f.clone(),
            params: vec![(values, Ty::List), (target, Ty::Int)],
            ret: Ty::Index,
            doc: "Index of the first element that is not less than the target.".into(),
            body,
        };
        main.push(Stmt::For(
            i,
            int(0),
            var(&q),
            vec![
                Stmt::Let(t.clone(), Ty::Int, Expr::ReadInt),
                Stmt::Print(call(&f, vec![var(&arr), var(&t)])),
            ],
        ));
        Unit { funcs: vec![func], main }
    } else {
        let (lo, hi, mid) = (b.n("lo"), b.n("hi"), b.n("mid"));
        let mut body = vec![Stmt::Let(t.clone(), Ty::Int, Expr::ReadInt)];
        body.extend(bisect(&arr, var(&n), &t, &lo, &hi, &mid));
        body.push(Stmt::Print(var(&lo)));
        main.push(Stmt::For(i, int(0), var(&q), body));
        Unit { funcs: vec![], main }
    }
}

fn pairs_loop(arr: &str, end: Expr, target: &str, count: &str, i: &str, j: &str) -> Stmt {
    Stmt::For(
        i.to_string(),
        int(0),
        end.clone(),
        vec![Stmt::For(
            j.to_string(),
            bin(Op::Add, var(i), int(1)),
            end,
            vec![Stmt::If(
                bin(
                    Op::Eq,
                    bin(Op::Add, index(arr, var(i)), index(arr, var(j))),
                    var(target),
                ),
                vec![Stmt::AddAssign(count.to_string(), int(1))],
                vec![],
            )],
        )],
    )
}

fn pair_count(b: &mut Builder<'_>) -> Unit {
    let mut main = Vec::new();
    let (n, arr) = read_list(b, &mut main);
    let target = b.n("target");
    main.push(Stmt::Let(target.clone(), Ty::Int, Expr::ReadInt));
    if b.style.helpers {
        let f = b.f("count_pairs");
        let values = b.n("arr");
        let tv = b.n("target");
        let count = b.n("count");
        let (i, j) = (b.n("i"), b.n("j"));
        let mut body = Vec::new();
        push(&mut body, b.guard_empty(&values, int(0)));
        push(&mut body, b.comment("Check every unordered pair"));
        body.push(Stmt::Let(count.clone(), Ty::Int, int(0)));
        body.push(pairs_loop(&values, len(&values), &tv, &count, &i, &j));
        body.push(Stmt::Blank);
        body.push(Stmt::Return(Some(var(&count))));
        let func = Func {
            name: f.clone(),
            params: vec![(values, Ty::List), (tv, Ty::Int)],
            ret: Ty::Int,
            doc: "Number of pairs whose sum equals the target.".into(),
            body,
        };
        main.push(Stmt::Blank);
        print_result(b, &mut main, call(&f, vec![var(&arr), var(&target)]));
        Unit { funcs: vec![func], main }
    } else {
        let count = b.n("count");
        let (i, j) = (b.n("i"), b.n("j"));
        main.push(Stmt::Let(count.clone(), Ty::Int, int(0)));
        main.push(pairs_loop(&arr, var(&n), &target, &count, &i, &j));
        main.push(Stmt::Print(var(&count)));
        Unit { funcs: vec![], main }
    }
}

fn collatz_loop(x: &str, steps: &str) -> Stmt {
    Stmt::While(
        bin(Op::Ne, var(x), int(1)),
        vec![
            Stmt::If(
                bin(Op::Eq, bin(Op::Mod, var(x), int(2)), int(0)),
                vec![Stmt::Assign(x.to_string(), bin(Op::Div, var(x), int(2)))],
                vec![Stmt::Assign(
                    x.to_string(),
                    bin(Op::Add, bin(Op::Mul, int(3), var(x)), int(1)),
                )],
            ),
            Stmt::AddAssign(steps.to_string(), int(1)),
        ],
    )
}

fn collatz(b: &mut Builder<'_>) -> Unit {
    let mut main = Vec::new();
    let n = read_n(b, &mut main);
    if b.style.helpers {
        let f = b.f("collatz_steps");
        let x = b.n("x");
        let steps = b.n("steps");
        let mut body = Vec::new();
        if b.style.validation {
            body.push(Stmt::If(
                bin(Op::Le, var(&x), int(0)),
                vec![Stmt::Return(Some(int(0)))],
                vec![],
            ));
        }
        push(&mut body, b.comment("Iterate the Collatz map until reaching one"));
        body.push(Stmt::Let(steps.clone(), Ty::Int, int(0)));
        body.push(collatz_loop(&x, &steps));
        body.push(Stmt::Return(Some(var(&steps))));
        let func = Func {
            name: f.clone(),
            params: vec![(x, Ty::Int)],
            ret: Ty::Int,
            doc: "Number of Collatz steps needed to reach one.".into(),
            body,
        };
        main.push(Stmt::Blank);
        print_result(b, &mut main, call(&f, vec![var(&n)]));
        Unit { funcs: vec![func], main }
    } else {
        let steps = b.n("steps");
        main.push(Stmt::Let(steps.clone(), Ty::Int, int(0)));
        main.push(collatz_loop(&n, &steps));
        main.push(Stmt::Print(var(&steps)));
        Unit { funcs: vec![], main }
    }
}
