"""Stable report keys, one per verified identity.

Each key is the identity itself written as a formula, so a failing entry in a
report reads as the statement that was falsified.
"""

# standing hypotheses
JACOBI = "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0"
INVARIANT = "B([x,y],z) = B(x,[y,z])"
METRIC = "non-degenerate, symmetric, bilinear form"
COCYCLE = "θ(x,[y,z]) + θ(y,[z,x]) + θ(z,[x,y]) = 0"
EXTENSION = "[x+u,y+w] = [x,y]_0 + θ(x,y)"
V_CENTRAL = "V ⊆ C(g)"
LEIBNIZ = "D([x,y]) = [D(x),y] + [x,D(y)]"
SKEW = "B0(D(x),y) + B0(x,D(y)) = 0"

# h and k
HK_ID = "h∘k = Id_g0"
H_PAIRING = "B(x+v,y) = B0(h(x+v),y)"
K_PAIRING = "B0(x,y) = B(k(x),y+v)"
KER_H = "Ker(h) = g0^⊥"
IM_K = "Im(k) = V^⊥"
SPLIT_G = "g = Ker(h) ⊕ Im(k)"
K_BRACKET = "k([x,y]_0) = [k(x),y]"
K_FORMULA = "k(x) = T(x) + Σ B0(a_i,x) v_i"
T_CENTROID = "T ∈ Γ_B0(g0)"
KER_T = "Ker(T) ⊆ C(g0)"
ORTHO_BASIS = "B(a_i+w_i,v_j) = δ_ij"
ORTHO_SPAN = "span{a_i+w_i} = g0^⊥"
H_DOUBLE = "h([x,[y,z]]) = [x,h([y,z])]"
RHO_DER = "ρ(x) ∈ Der(g0) ∩ o_B0(g0)"
RHO_REP = "ρ([x,y]) = ρ(x)∘T∘ρ(y) − ρ(y)∘T∘ρ(x)"
RHO_A = "ρ(a_i) = D_i"
KER_D = "Ker(D_i) = {x ∈ g0 : [a_i,x] = 0}"
RECONSTRUCT = "x = T(h(x+v)) + Σ B(x+v,v_i) a_i"
T_RHO = "T∘ρ(x) = ρ(x)∘T = ad(x)"
T_D = "T∘D_i = D_i∘T = ad(a_i)"
IM_T_ZERO = "Im(T) = 0 ⇒ g0 abelian"

# Hom-Lie structures
TWISTED_JACOBI = "Σ_cyc μ(α(x),μ(y,z)) = 0"
MU_LIFT = "k(μ(x,y)) = [x,y]"
MU_IMAGE = "μ(g,g) ⊆ g0"
MU_V = "μ(V,g) = 0"
ALPHA_V = "α|_V = Id_V"
ALPHA0_SYM = "B0(α0(x),y) = B0(x,α0(y))"
MU0_INV = "B0(μ0(x,y),z) = B0(x,μ0(y,z))"
DELTA3 = "α0(μ0(x,y)) = μ0(α0(x),y) = [x,y]_0"
AP_CENTROID = "α′([x,y]) = [α′(x),y]"
AP_SYM = "B(α′(x),y) = B(x,α′(y))"
AP_DELTA1 = "α′(μ(x,y)) = [x,y]"
AP_DELTA2 = "μ(α′(x),y) = [x,y]_0"
SAME_T = "π∘α|_g0 = π∘α′|_g0 = T"
G0_IDEAL = "g0 is a Hom-Lie ideal of (g,μ,α)"
G0_NOT_IDEAL_AP = "g0 ideal of (g,μ,α′) ⇔ θ = 0"
HK_COND_I = "k([x,y]_0) = [k(x),y] (metric-free)"
HK_COND_II = "k(h([x,y])) = [x,y]"

# structure when some D_i is not inner
CENTER_V = "C(g) = C_μ(g) = V"
MU_SURJ = "g0 = h([g,g]) = μ(g,g) = μ(g0,g0)"
KER_T_CENTER = "C(g0) = Ker(T)"
IM_T_DERIVED = "[g0,g0]_0 = Im(T)"
RADICAL_ZERO = "θ(x,g0) = 0 ⇒ x = 0"

# isotropic V projections
E_PROJ = "E = α0∘h|_g0, E² = E, g0 = Im(α0) ⊕ 𝔞"
F_PROJ = "F = h∘α0, F² = F, g0 = Ker(α0) ⊕ 𝔞^⊥"
INDEP = "{a_i} and {h(v_i)} linearly independent"
H_V_BIJ = "h|_V : V → Ker(α0) bijective, r = dim Ker(α0)"
IM_ALPHA0_V = "B(Im(α0),V) = 0"
ALPHA0_REG = "α0 = α0∘h∘α0"
L1 = "x = F(x) + Σ B0(a_i,x) h(v_i)"

# twisted Killing form
CONDITION_B = "α(μ(x,y)) = μ(α(x),y) = [x,y]"
K_SYM = "K(x,y) = K(y,x)"
K_ALPHA = "K(α(x),y) = K(x,α(y)) = κ(x,y)"
K_MU_INV = "K(μ(x,y),z) = K(x,μ(y,z))"
K_LIE_INV = "K([x,y],z) = K(x,[y,z])"
K_NONDEG = "K non-degenerate ⇔ κ non-degenerate"
K_SOLV = "K(x,[y,z]) = 0 ⇒ g solvable"
K_NILP = "K = 0 ⇔ g nilpotent"
GIL = "(g,μ,α) nilpotent ⇒ g nilpotent and K = 0"

# connection product and G
MU_INV_B = "B(μ(x,y),z) = B(x,μ(y,z)) ⇔ D_1 = … = D_r = 0"
CONN_DEF = "2B(xy,z) = B(μ(x,y),z) + B(μ(z,x),y) + B(μ(z,y),x)"
CONN_I = "μ(x,y) = xy − yx"
CONN_II = "B(xy,z) + B(y,xz) = 0"
CONN_III = "2xy = μ(x,y) − [h(x),y] + [x,h(y)]"
CONN_IV_SQ = "x² = 0 on Ker(h) ∪ Im(α′)"
CONN_IV_Y2 = "(a+α′(x))² = [a,x] ∈ Im(α′)"
CONN_IV_Y4 = "(y²)² = 0"
CONN_V = "xy = −yx ⇔ θ = 0"
G_UNIT = "ν(1_G,X) = ν(X,1_G) = X"
G_COMM = "[(ξ,x),(η,y)]_ν = (0,μ(x,y))"
G_SIMPLE = "multiplication algebra of G = End(G)"
G_QUOTIENT = "(G/F·1_G,[·,·]_ν̃,α̃) ≅ (g,μ,α′)"
DOT_I = "μ0(x,y) = x·y − y·x"
DOT_II = "2x·y = μ0(x,y) − [h(x),y]_0 + [x,h(y)]_0"
DOT_III = "x·x = 0 on Ker(h) ∪ Im(α0), (y·y)·(y·y) = 0"
