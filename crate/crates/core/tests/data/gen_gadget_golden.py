# Independent oracle for the 9-copy gadget metric on the 3-set, 5-element example.
import networkx as nx
sets = [[0, 1], [1, 2, 3], [3, 4]]
L, m, n, g = 9, 3, 5, 0.1
G = nx.Graph()
N = L * (m + n + 1)
G.add_nodes_from(range(N))
S = lambda q, i: L + q * (m + n) + i
X = lambda q, j: L + q * (m + n) + m + j
for q in range(L):
    for l in range(L):
        for i in range(m): G.add_edge(l, S(q, i), weight=1.0)
        for j in range(n): G.add_edge(l, X(q, j), weight=2.0 - g)
    for i in range(m):
        for i2 in range(i + 1, m): G.add_edge(S(q, i), S(q, i2), weight=1.0 - g)
        for j in sets[i]: G.add_edge(S(q, i), X(q, j), weight=1.0)
D = dict(nx.all_pairs_dijkstra_path_length(G))
with open("gadget_three_sets_L9.metric", "w") as f:
    f.write(f"metric {N}\n")
    for a in range(N):
        f.write(",".join(repr(float(D[a][b])) for b in range(N)) + "\n")
