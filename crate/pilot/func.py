import numpy as np, math, sys
rng=np.random.default_rng(7)
def logV(m,k):
    tot=1.0;term=1.0;j=0
    while 2*(j+1)<=m:
        term*= (m-2*j)*(m-2*j-1)/(2*k*(j+1)); j+=1; tot+=term
    return math.log(tot)
def sample(n,M):
    pos=[1]; j=1
    while True:
        u=rng.random(); nxt=math.ceil(j/u)
        if nxt<=j: nxt=j+1
        if nxt>M: break
        pos.append(nxt); j=nxt
    return pos
ts=[0.2,0.4,0.6,0.8,1.0]
grid=np.linspace(0,1,101)
for n,P in [(10**4,10000),(10**5,10000),(10**6,10000)]:
    ln=math.log(n); sc=math.sqrt(ln**3/3)
    W=[];sups=[]
    for _ in range(P):
        pos=sample(n,4*n)
        win=[p for p in pos if p<=n]+[n+1]
        c={}
        for a,b in zip(win,win[1:]): c[b-a]=c.get(b-a,0)+1
        z={}
        for a,b in zip(pos,pos[1:]): z[b-a]=z.get(b-a,0)+1
        def Wt(t):
            m=math.floor(n**t+1e-9); return (sum(cc*math.log(k)+logV(cc,k) for k,cc in c.items() if k<=m)-t*t/2*ln*ln)/sc
        def Bt(t):
            m=math.floor(n**t+1e-9); return (sum(cc*math.log(k) for k,cc in z.items() if k<=m)-t*t/2*ln*ln)/sc
        W.append([Wt(t) for t in ts])
        sups.append(max(abs(Wt(t)-Bt(t)) for t in grid))
    W=np.array(W); C=np.cov(W.T,bias=True)
    print(n,'Esup',np.mean(sups))
    print(np.round(C,3)); print(np.round(np.minimum.outer(ts,ts)**3,3))
