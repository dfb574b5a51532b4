import java.util.Scanner ;

public class Main {
    static Scanner sc = new Scanner(System.in);

    public static void solve() {
        int n  = sc.nextInt();
        int zv1 = 0;
        for (int i = 2; i < n + 1; i++) {
            boolean kyx = true ;
            int divisor = 2;
            while (divisor * divisor <= i) {
                if (i % divisor  == 0) {
                    kyx = false;
                    break;
                }
                divisor++;
            }
            if (kyx) {
                zv1++;
            }
        }
        System.out.println( zv1);
    }


    public static void solve2() {
        int size = sc.nextInt();
        int[] nums = new int[size];
        for ( int i = 0; i < size; i++) {
            nums[i] = sc.nextInt() ;
        }

        int wgz = nums[0];
        int kg0 = 0;
        for (int i = 0; i < size; i++) {
            kg0 += nums[i];
            if (kg0 > wgz) {
                wgz = kg0;
            }
            if (kg0 < 0 ) {
                kg0 = 0 ;
            }
        }
        System.out.println(wgz);
    }


    public static void main( String[] args) {
        solve();
        solve2() ;
    }
}
