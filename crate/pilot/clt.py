import numpy as np, math, sys
from scipy.stats import norm
rng=np.random.default_rng(int(sys.argv[1]) if len(sys.argv)>1 else 1)
def logV(m,k):
    s=0.0;term=1.0;j=0
    tot=1.0
    while 2*(j+1)<=m:
        term*= (m-2*j)*(m-2*j-1)/(2*k*(j+1)); j+=1; tot+=term
    return math.log(tot)
def sample(n):
    # theta=1, ones positions within 1..n, plus sentinel
    pos=[1]; j=1
    while True:
        u=rng.random(); nxt=math.ceil(j/u)
        if nxt<=j: nxt=j+1
        if nxt>n: break
        pos.append(nxt); j=nxt
    pos.append(n+1)
    d=np.diff(pos)
    ks,cs=np.unique(d,return_counts=True)
    li=0.0; lb=0.0
    for k,c in zip(ks,cs):
        lb+=c*math.log(k); li+=c*math.log(k)+logV(int(c),int(k))
    return li,lb
def run(n,N,edge=False):
    L=np.array([sample(n)[0] for _ in range(N)])
    mu=sum(math.log(k)/k for k in range(1,n+1)); s2=sum(math.log(k)**2/k for k in range(1,n+1))
    ln=math.log(n)
    out={}
    for name,(m,s) in {'exact':(mu,math.sqrt(s2)),'asym':(ln*ln/2,math.sqrt(ln**3/3))}.items():
        x=np.sort((L-m)/s); F=np.arange(1,N+1)/N; G=np.arange(0,N)/N
        def ks(cdf):
            c=cdf(x); return max(np.max(F-c),np.max(c-G))
        e=lambda x: norm.cdf(x)+3**1.5/(24*math.sqrt(2*math.pi))*(1-x*x)*np.exp(-x*x/2)/math.sqrt(ln)
        out[name]=(ks(norm.cdf),ks(e), x.mean(), x.var())
    return out
for n,N in [(10**4,100000),(10**5,20000),(10**6,20000)]:
    print(n,N,run(n,N))
