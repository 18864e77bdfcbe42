// scratch: brute-force double-check of Z^2 ball cuts + node budget check
use translike::cayley::build_ball;
use translike::groups::group_from_spec;
use translike::separation::{exact_cut, FiniteGraph, DEFAULT_NODE_BUDGET};

fn valid(g: &FiniteGraph, removed: &[usize]) -> bool {
    let n = g.n();
    let mut alive = vec![true; n];
    for &v in removed {
        alive[v] = false;
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let mut size = 0usize;
        while let Some(u) = stack.pop() {
            size += 1;
            for &v in g.neighbors(u as u32) {
                let v = v as usize;
                if alive[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if size > n / 2 {
            return false;
        }
    }
    true
}

fn any_of_size(g: &FiniteGraph, k: usize) -> bool {
    let n = g.n();
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 {
        return valid(g, &idx);
    }
    loop {
        if valid(g, &idx) {
            return true;
        }
        // advance to next combination; detect completion
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return false;
        }
    }
}

fn main() {
    let z2 = group_from_spec("zd:2").unwrap();
    for r in 2..=4u32 {
        let ball = build_ball(&z2, r, 1 << 22).unwrap();
        let g = FiniteGraph::from_ball(&ball);
        let brute = (0..=6).find(|&k| any_of_size(&g, k));
        let res = exact_cut(&g, DEFAULT_NODE_BUDGET);
        println!(
            "Z2 r={r} n={} brute={:?} bnb={} method={:?}",
            g.n(),
            brute,
            res.cut_size,
            res.method
        );
    }
}
