use crate::osa::Mode;

/// Static description of one catalog row; everything else is computed.
pub struct EntryDef {
    pub id: &'static str,
    pub equation: &'static str,
    pub params: &'static [&'static str],
    pub mode: Mode,
    /// The published formula as printed.
    pub published: &'static str,
    pub citation: &'static str,
    /// The published formula in the relation DSL.
    pub transcription: &'static str,
    pub ansatz: Option<&'static str>,
    /// The published formula already has the ansatz substituted.
    pub published_under_ansatz: bool,
    /// Exponent relations imposed before comparing, e.g. `("n", "2k-m")`.
    pub exponent_subst: &'static [(&'static str, &'static str)],
    /// Parameter order for exponent balance; defaults to `params`.
    pub balance_order: &'static [&'static str],
    pub notes: &'static [&'static str],
    pub also: &'static [AlsoCheck],
}

/// A second published form checked against the same engine relation.
pub struct AlsoCheck {
    pub label: &'static str,
    pub published: &'static str,
    pub transcription: &'static str,
    pub ansatz: Option<&'static str>,
    pub published_under_ansatz: bool,
}

const fn entry(id: &'static str, equation: &'static str) -> EntryDef {
    EntryDef {
        id,
        equation,
        params: &[],
        mode: Mode::Real,
        published: "",
        citation: "",
        transcription: "",
        ansatz: None,
        published_under_ansatz: false,
        exponent_subst: &[],
        balance_order: &[],
        notes: &[],
        also: &[],
    }
}

pub fn definitions() -> Vec<EntryDef> {
    vec![
        EntryDef {
            published: "L=|V±6A|^{-1/2}; if V∼A, L∼A^{-1/2}",
            citation: "Table 1, row 1: \"L=|V\\pm 6A|^{-1/2}\"",
            transcription: "L^2*|V ± 6*A| = 1",
            ansatz: Some("V = alpha*A"),
            ..entry("kdv6", "u_t + 6*u*u_x + u_xxx = 0")
        },
        EntryDef {
            published: "L=|V±6A²|^{-1/2}; if V∼A², L∼A^{-1}",
            citation: "Table 1, row 2: \"L=|V \\pm 6A^2 |^{-1/2}\"",
            transcription: "L^2*|V ± 6*A^2| = 1",
            ansatz: Some("V = alpha*A^2"),
            notes: &["the published factor 6 belongs to 6*u*u_x; the row's equation has u^2*u_x with unit coefficient"],
            ..entry("mkdv", "u_t + u^2*u_x + u_xxx = 0")
        },
        EntryDef {
            published: "L=(8A/|V±2A|)^{1/2}",
            citation: "Table 1, row 3: \"L=( 8A/|V \\pm 2A| )^{1/2}\"",
            transcription: "L^2*|V ± 2*A| = 8*A",
            ansatz: Some("V = alpha*A"),
            ..entry("k22", "u_t + (u^2)_x + (u^2)_xxx = 0")
        },
        EntryDef {
            params: &["n"],
            published: "L=(n(n²+1)/(α±n))^{1/2} if V=αA^{n-1}",
            citation: "Table 1, row 4: \"L=( n(n^2 +1)/(\\alpha \\pm n) )^{1/2}\", \"if V=\\alpha A^{n-1}\"",
            transcription: "L^2*(alpha ± n) = n*(n^2 + 1)",
            ansatz: Some("V = alpha*A^(n-1)"),
            published_under_ansatz: true,
            notes: &["engine dispersion coefficient is n^3, the published one n(n^2+1)"],
            ..entry("knn", "u_t + (u^n)_x + (u^n)_xxx = 0")
        },
        EntryDef {
            params: &["n", "m"],
            published: "L=(n(n²+1)A^{n-1}/(V±mA^{m-1}))^{1/2}",
            citation: "Table 1, row 5: \"L=( n(n^2 +1) A^{n-1} / (V \\pm mA^{m-1}) )^{1/2}\"",
            transcription: "L^2*(V ± m*A^(m-1)) = n*(n^2 + 1)*A^(n-1)",
            notes: &["the published form attaches the dispersion exponent n to the numerator and the convection exponent m to the velocity term; the engine gives the opposite assignment (n from convection, m^3 from dispersion)"],
            ..entry("knm", "u_t + (u^n)_x + (u^m)_xxx = 0")
        },
        EntryDef {
            params: &["eps"],
            published: "L=√((±A+ε)/(V±A))",
            citation: "K(2,1,2) text: \"the OSA yields a dependence of the form L=\\sqrt{(\\pm A+\\epsilon)/(V\\pm A)}\"",
            transcription: "L^2*(V ± A) = ±A + eps",
            notes: &[
                "equation printed as u_t+u_x^2+u_xxx+eps*u_xxx^2=0; stored as (u^2)_x and (u^2)_xxx, the reading implied by linear and nonlinear dispersion acting together",
            ],
            ..entry("k212", "u_t + (u^2)_x + u_xxx + eps*(u^2)_xxx = 0")
        },
        EntryDef {
            published: "L=(A±V)^{-1}; if V∼A, L∼1/A",
            citation: "Table 2, row 2: \"L=(A \\pm V)^{-1}\"",
            transcription: "L*(A ± V) = 1",
            ansatz: Some("V = alpha*A"),
            notes: &["the row's solution column prints a tan form with sqrt(C-V^2); the tanh kink with sqrt(V^2-2C) from the text is the one implemented"],
            ..entry("burgers", "u_t + u*u_x - u_xx = 0")
        },
        EntryDef {
            params: &["a", "mu", "c", "m", "k", "gamma"],
            published: "cA^γL² + (V±amA^{m-1})L ± μk²A^{k-1} = 0",
            citation: "Table 2, row 3: \"cA^{\\gamma} L^2 + (V\\pm amA^{m-1})L \\pm \\mu k^2 A^{k-1}=0\"",
            transcription: "c*A^gamma*L^2 + (V ± a*m*A^(m-1))*L ± mu*k^2*A^(k-1) = 0",
            ..entry("qlparabolic", "u_t + a*(u^m)_x - mu*(u^k)_xx + c*u^gamma = 0")
        },
        EntryDef {
            params: &["a", "mu", "m", "k"],
            published: "L=μk²A^{k-m}/(am-α) if V=αA^{m-1}",
            citation: "Table 2, row 4: \"L=\\mu k^2/(am-\\alpha) A^{k-m}\", \"if V=\\alpha A^{m-1}\"",
            transcription: "L*(a*m - alpha) = mu*k^2*A^(k-m)",
            ansatz: Some("V = alpha*A^(m-1)"),
            published_under_ansatz: true,
            ..entry("nlburgers", "u_t + a*(u^m)_x - mu*(u^k)_xx = 0")
        },
        EntryDef {
            published: "±VA/L² = sin A; if V=L², A=sin A",
            citation: "Table 2, row 5: \"\\pm VA/L^2 = sin A\"",
            transcription: "±V*A/L^2 = sin(A)",
            ..entry("sine_gordon", "u_xt - sin(u) = 0")
        },
        EntryDef {
            mode: Mode::Envelope,
            published: "L=(±V±√|V²-4A²|)/(2A²); if A∼V, L=1/A",
            citation: "Table 2, row 6: \"L=(\\pm V \\pm \\sqrt{|V^2 - 4 A^2|})/(2A^2)\"",
            transcription: "A^2*L^2 ± V*L + 1 = 0",
            ansatz: Some("V = alpha*A"),
            notes: &["transcribed as the quadratic whose roots are the published L; the absolute value inside the root is dropped"],
            ..entry("nls3", "i*psi_t + psi_xx + 2*|psi|^2*psi = 0")
        },
        EntryDef {
            params: &["n"],
            mode: Mode::Envelope,
            published: "L=(±V±√|V²-4Aⁿ|)/(2Aⁿ)",
            citation: "Table 2, row 7: \"L=(\\pm V \\pm \\sqrt{|V^2 - 4 A^n|})/(2A^n)\"",
            transcription: "A^n*L^2 ± V*L + 1 = 0",
            ansatz: Some("V = alpha*A"),
            notes: &["transcribed as the quadratic whose roots are the published L; the absolute value inside the root is dropped"],
            ..entry("nlsn", "i*psi_t + psi_xx + |psi|^(n-1)*psi = 0")
        },
        EntryDef {
            params: &["a", "U"],
            mode: Mode::Envelope,
            published: "L=(aA²±V-1)^{-1/2}; if V∼±1, L∼1/(A√a)",
            citation: "Table 2, row 8: \"L=(aA^2 \\pm V -1)^{-1/2}\"",
            transcription: "L^2*(a*A^2 ± V - 1) = 1",
            notes: &["the external potential V(x) is taken constant and named U so it is not confused with the velocity"],
            ..entry("gp1d", "i*psi_t + 1/2*psi_xx - a*|psi|^2*psi - U*psi + psi = 0")
        },
        EntryDef {
            params: &["c"],
            published: "V=c; A, L arbitrary",
            citation: "Table 2, row 1: \"V=c\", \"A, L arbitrary\"",
            transcription: "V^2 = c^2",
            ..entry("linear_wave", "u_xx - c^(-2)*u_tt = 0")
        },
        EntryDef {
            params: &["a", "mu", "c", "m", "n", "k"],
            published: "L=A^{k-m}(μk²±√(μ²k⁴-4mn³(a-V₀)))/(2m(a-V₀)) if V=mV₀A^{m-1}, 2k=m+n",
            citation: "dissipative-dispersive text: \"L=A^{k-m}( \\mu k^2 \\pm \\sqrt{\\mu^2 k^4-4mn^3(a-V_0)} )/(2m(a-V_0)) \\sim A^{k-m}\", \"where we put V=mV_0A^{m-1}\"; Table 3, row 1",
            transcription: "m*(a - V0)*L^2 - mu*k^2*A^(k-m)*L + n^3*A^(2*k - 2*m) = 0",
            ansatz: Some("V = m*V0*A^(m-1)"),
            published_under_ansatz: true,
            exponent_subst: &[("n", "2k-m")],
            balance_order: &["m", "n", "k"],
            notes: &[
                "transcribed as the quadratic whose roots are the published L",
                "the published quadratic has no dispersion coefficient c; it is the engine relation at c = 1",
                "Table 3, row 1 prints V=mV0A^{k-1} and A^{m-k}; the text's V=mV0A^{m-1} and A^{k-m} are used",
            ],
            ..entry("diss_disp", "u_t + a*(u^m)_x + mu*(u^k)_xx + c*(u^n)_xxx = 0")
        },
        EntryDef {
            params: &["alpha", "beta", "gamma", "m", "p", "n", "l"],
            published: "2L^{l+4}((n+l+1)V₀-α) - 2L^{l+2}(l+n+1)(l+n+2)β - (l+n+1)(2+2n²+3l+l²+n(5+3l))γ, if C=0, V=V₀A^m and m=p=n+l",
            citation: "Table 3, row 2, \"if C=0, V=V_0 A^{m} and m=p=n+l\"",
            transcription: "2*L^(l+4)*((n + l + 1)*V0 - alpha) - 2*L^(l+2)*(l + n + 1)*(l + n + 2)*beta - (l + n + 1)*(2 + 2*n^2 + 3*l + l^2 + 5*n + 3*n*l)*gamma = 0",
            ansatz: Some("V = V0*A^m"),
            published_under_ansatz: true,
            exponent_subst: &[("m", "n+l"), ("p", "n+l")],
            balance_order: &["m", "p", "n", "l"],
            notes: &[
                "the Euler-Lagrange form Vu = ... is stored with C = 0; alpha stands for alpha/(p+1)",
                "the text states the condition as m=p=n+r; the table's m=p=n+l is used",
            ],
            ..entry(
                "gkdv5",
                "-V*u + alpha*u^(p+1) - beta*m*u^(m-1)*u_x^2 + 2*beta*(u^m*u_x)_x + 1/2*gamma*n*u^(n-1)*u_x^l*u_xx^2 - 1/2*gamma*l*(u^n*u_x^(l-1)*u_xx^2)_x + gamma*(u^n*u_x^l*u_xx)_xx = 0",
            )
        },
        EntryDef {
            published: "-V + f'(A) + (Ag''(A)+g'(A))/L + (A²h'''(A)+3Ah''(A)+h'(A))/L²",
            citation: "general model text: \"The OSA approach gives the equation -V+f'(A)+(Ag''(A)+g'(A))/L+(A^2h'''(A)+3Ah''(A)+h'(A))/L^2\"",
            transcription: "-V + f'(A) + (A*g''(A) + g'(A))/L + (A^2*h'''(A) + 3*A*h''(A) + h'(A))/L^2 = 0",
            ansatz: Some("V = V0*f'(A)"),
            also: &[AlsoCheck {
                label: "reduced form under V = V0*f'(A)",
                published: "L²f'(1-V₀) + L(Ag''+g') + A²h''' + 3Ah'' + h' = 0",
                transcription: "L^2*f'(A)*(1 - V0) + L*(A*g''(A) + g'(A)) + A^2*h'''(A) + 3*A*h''(A) + h'(A) = 0",
                ansatz: Some("V = V0*f'(A)"),
                published_under_ansatz: true,
            }],
            ..entry("fgh", "u_t + f(u)_x + g(u)_xx + h(u)_xxx = 0")
        },
        EntryDef {
            params: &["eps"],
            published: "L=√(4εA/(-1±√(1-8εA(A±V))))",
            citation: "curvature text: \"L=\\sqrt{4\\epsilon A/(-1\\pm \\sqrt{1-8\\epsilon A(A\\pm V)})}\"",
            transcription: "(A ± V)*L^4 + L^2 + 2*eps*A = 0",
            notes: &[
                "transcribed as the quadratic in L^2 whose roots are the published L^2",
                "the published (A±V) fits a u*u_x convection term; see curvature_kdv_uux",
            ],
            ..entry("curvature_kdv", "u_t + u_x + u_xxx + eps*(u_xx^2)_x = 0")
        },
        EntryDef {
            params: &["eps"],
            published: "L=√(4εA/(-1±√(1-8εA(A±V))))",
            citation: "curvature text: \"L=\\sqrt{4\\epsilon A/(-1\\pm \\sqrt{1-8\\epsilon A(A\\pm V)})}\"",
            transcription: "(A ± V)*L^4 + L^2 + 2*eps*A = 0",
            notes: &["variant with u*u_x in place of u_x, the convection the published width relation corresponds to"],
            ..entry("curvature_kdv_uux", "u_t + u*u_x + u_xxx + eps*(u_xx^2)_x = 0")
        },
        EntryDef {
            params: &["hbar", "mass", "E", "U", "a"],
            published: "L=ħ/√(2m(E-V)+aA²)",
            citation: "stationary NLS text: \"L=\\hbar/\\sqrt{2m(E-V)+aA^{2}}\"",
            transcription: "L^2*(2*mass*(E - U) + a*A^2) = hbar^2",
            notes: &["the potential V is named U and the mass m is named mass"],
            ..entry("schrod_length", "-1/2*hbar^2/mass*u_xx + E*u - U*u + a*u^3 = 0")
        },
    ]
}
