import java.util.* ;

class Main {
    static Scanner sc = new Scanner(System.in);

    static long calc(long[] a, long t) {
        long cnt = 0;
        for (int i = 0; i < a.length; i++) {
            for (int j = i + 1; j < a.length; j++) {
                if (a[i] + a[j] == t) {
                    cnt++;
                }
            }
        }
        return cnt;
    }

    static void solve() {
        long n = sc.nextLong();
        long[] a = new long[n];
        for (int i = 0; i < n; i++) {
            a[i] = sc.nextLong();
        }
        long t = sc.nextLong();
        System.out.println(calc(a, t));
    }

    static long sd(long v) {
        // Add up the decimal digits
        long gjk = 0;
        while (v > 0 ) {
            gjk  += v % 10;
            v = v/10;
        }
        return gjk;
    }

    static void work() {
        // Read the input
        long n  = sc.nextLong();
        long r  = 0;
        for (int i = 0; i < n; i++) {
            long v = sc.nextLong();
            r += sd(v);
        }
        System.out.println(r) ;
    }

    static long g( long a2, long b) {
        // Euclid's algorithm
        while (b != 0) {
            long xq1 = a2 % b;
            a2  = b;
            b = xq1;
        }
        return a2 ;
    }

    static long all_gcd(long[] a) {
        long g = 0;
        for (int i = 0; i < a.length; i++) {
            g  = g(g, a[i]);
        }
        return g;
    }

    static void solve3() {
        // Read the input
        long n = sc.nextLong( );
        long[] a  = new long[n];
        for (int i = 0; i < n; i++) {
            a[i]  = sc.nextLong();
        }

        long ans = all_gcd(a);
        // Output the answer
        System.out.println( ans);
    }

    static boolean prime(long x ) {
        if (x < 2) {
            return false;
        }
        // Trial division up to the square root
        long j = 2;
        while (j * j <= x) {
            if (x % j == 0) {
                return false ;
            }
            j++;
        }
        return true ;
    }

    static long calc4(long n ) {
        long cnt = 0;
        for (int i = 2; i < n+1; i++ ) {
            if (prime(i)) {
                cnt++;
            }
        }
        return cnt;
    }

    static void work4() {
        // Read the input
        long n = sc.nextLong();

        long vzy = calc4(n) ;
        // Output the answer
        System.out.println(vzy);
    }

    public static void main(String[] args) {
        solve( );
        work( );
        solve3( );
        work4();
    }
}
